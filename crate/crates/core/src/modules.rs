//! Finitely presented graded modules over Q or A = Q/(f), and subquotients
//! with chosen generators. All maps are exact; minimal generators are picked
//! greedily in increasing degree.

use crate::error::{Error, Result};
use crate::free::*;
use crate::groebner::{lift_kernel, GroebnerBasis, TaggedBasis};
use crate::hilbert::HilbertSeries;
use crate::ideal::IdealData;
use crate::poly::Polynomial;
use crate::ring::RingPresentation;
use num::BigInt;
use std::sync::Arc;

/// Cokernel presentation: free module of the given rank and shifts modulo
/// the column span of `relations` (plus f-multiples when `over_a`).
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    pub rp: Arc<RingPresentation>,
    pub over_a: bool,
    pub rank: usize,
    pub shifts: Vec<i64>,
    pub relations: Vec<FreeElem>,
}

impl ModulePresentation {
    pub fn new(
        rp: &Arc<RingPresentation>,
        over_a: bool,
        shifts: Vec<i64>,
        relations: Vec<FreeElem>,
    ) -> Result<ModulePresentation> {
        let rank = shifts.len();
        for rel in &relations {
            if rel.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: rel.len(),
                });
            }
            elem_degree(rel, &shifts)?;
        }
        Ok(ModulePresentation {
            rp: Arc::clone(rp),
            over_a,
            rank,
            shifts,
            relations: relations
                .into_iter()
                .filter(|r| !elem_is_zero(r))
                .collect(),
        })
    }

    pub fn free(rp: &Arc<RingPresentation>, over_a: bool, shifts: Vec<i64>) -> ModulePresentation {
        ModulePresentation {
            rp: Arc::clone(rp),
            over_a,
            rank: shifts.len(),
            shifts,
            relations: Vec::new(),
        }
    }

    /// A itself (or Q when `over_a` is false).
    pub fn ring_module(rp: &Arc<RingPresentation>, over_a: bool) -> ModulePresentation {
        ModulePresentation::free(rp, over_a, vec![0])
    }

    /// Cyclic module A/(gens).
    pub fn cyclic(rp: &Arc<RingPresentation>, over_a: bool, ideal: &IdealData) -> ModulePresentation {
        ModulePresentation {
            rp: Arc::clone(rp),
            over_a,
            rank: 1,
            shifts: vec![0],
            relations: ideal.gens.iter().map(|g| vec![g.clone()]).collect(),
        }
    }

    pub fn zero_module(rp: &Arc<RingPresentation>, over_a: bool) -> ModulePresentation {
        ModulePresentation {
            rp: Arc::clone(rp),
            over_a,
            rank: 0,
            shifts: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// Relations including f-multiples of the coordinate vectors when over A.
    pub fn effective_relations(&self) -> Vec<FreeElem> {
        let mut rels = self.relations.clone();
        if self.over_a {
            for f in &self.rp.regular_sequence {
                for i in 0..self.rank {
                    rels.push(elem_unit(&self.rp.ring, self.rank, i, f));
                }
            }
        }
        rels
    }

    pub fn relations_gb(&self) -> GroebnerBasis {
        GroebnerBasis::new(&self.rp.ring, self.rank, &self.effective_relations(), None)
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        let gb = self.relations_gb();
        HilbertSeries::from_lead_terms(self.rp.ring.nvars(), &self.shifts, &gb.lead_terms())
    }

    pub fn dim(&self) -> i64 {
        self.hilbert_series().dim()
    }

    pub fn multiplicity(&self) -> BigInt {
        self.hilbert_series().multiplicity()
    }

    pub fn is_zero(&self) -> bool {
        if self.rank == 0 {
            return true;
        }
        let gb = self.relations_gb();
        (0..self.rank).all(|i| {
            gb.contains(&elem_unit(&self.rp.ring, self.rank, i, &Polynomial::one(&self.rp.ring)))
                .unwrap()
        })
    }

    /// Minimal presentation by cancelling unit entries of relation columns
    /// (lexicographically first unit each pass).
    pub fn minimized(&self) -> ModulePresentation {
        let ring = &self.rp.ring;
        let field = ring.field;
        let mut shifts = self.shifts.clone();
        let mut rels: Vec<FreeElem> = self
            .relations
            .iter()
            .map(|r| self.rp.nf_elem(r))
            .filter(|r| !elem_is_zero(r))
            .collect();
        'outer: loop {
            for j in 0..rels.len() {
                for i in 0..shifts.len() {
                    let c = rels[j][i].constant_term();
                    if c.is_zero() || rels[j][i].degree() != Some(0) {
                        continue;
                    }
                    // e_i = -(1/c) * (other entries of column j); eliminate
                    // row i from every other column, then drop row and column.
                    let inv = field.inv(&c);
                    let pivot_col = rels[j].clone();
                    let mut next: Vec<FreeElem> = Vec::new();
                    for (jj, col) in rels.iter().enumerate() {
                        if jj == j {
                            continue;
                        }
                        let factor = col[i].scale(&inv);
                        let adjusted = elem_sub(col, &elem_mul_poly(&pivot_col, &factor));
                        let mut stripped: FreeElem = Vec::new();
                        for (ii, e) in adjusted.iter().enumerate() {
                            if ii != i {
                                stripped.push(self.rp.nf(e));
                            }
                        }
                        next.push(stripped);
                    }
                    shifts.remove(i);
                    rels = next.into_iter().filter(|r| !elem_is_zero(r)).collect();
                    continue 'outer;
                }
            }
            break;
        }
        ModulePresentation {
            rp: Arc::clone(&self.rp),
            over_a: self.over_a,
            rank: shifts.len(),
            shifts,
            relations: rels,
        }
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        self.minimized().rank
    }

    /// ann(M) = intersection over generators of (relations : e_i).
    pub fn annihilator(&self) -> IdealData {
        let ring = &self.rp.ring;
        if self.rank == 0 {
            return IdealData::unit(ring);
        }
        let rels = self.effective_relations();
        let mut acc: Option<IdealData> = None;
        for i in 0..self.rank {
            let gens_in = vec![elem_unit(ring, self.rank, i, &Polynomial::one(ring))];
            let coeffs = lift_kernel(ring, self.rank, &gens_in, &rels);
            let gens: Vec<Polynomial> = coeffs.into_iter().map(|c| self.rp.nf(&c[0])).collect();
            let this = IdealData {
                ring: Arc::clone(ring),
                gens,
            };
            acc = Some(match acc {
                None => this,
                Some(prev) => prev.intersect(&self.rp, &this),
            });
        }
        let id = acc.unwrap();
        IdealData {
            gens: id.minimal_gens(&self.rp),
            ring: Arc::clone(ring),
        }
    }

    /// (0 :_M J) as a subquotient of the same ambient free module.
    pub fn colon_submodule(&self, ideal: &IdealData) -> Subquotient {
        let ring = &self.rp.ring;
        let rels = self.effective_relations();
        if ideal.gens.is_empty() || ideal.is_zero_in(&self.rp) {
            // (0 : 0) = M
            let gens: Vec<FreeElem> = (0..self.rank)
                .map(|i| elem_unit(ring, self.rank, i, &Polynomial::one(ring)))
                .collect();
            return Subquotient::from_generators(
                &self.rp,
                self.over_a,
                self.shifts.clone(),
                gens,
                rels,
            );
        }
        let t = ideal.gens.len();
        // v with x_k v in relations for every generator x_k of J: one stacked
        // kernel computation in Q^{rank * t}.
        let big_rank = self.rank * t;
        let mut gens_in: Vec<FreeElem> = Vec::new();
        for i in 0..self.rank {
            let mut col = elem_zero(ring, big_rank);
            for (k, x) in ideal.gens.iter().enumerate() {
                col[k * self.rank + i] = x.clone();
            }
            gens_in.push(col);
        }
        let mut targets: Vec<FreeElem> = Vec::new();
        for k in 0..t {
            for r in &rels {
                let mut col = elem_zero(ring, big_rank);
                for i in 0..self.rank {
                    col[k * self.rank + i] = r[i].clone();
                }
                targets.push(col);
            }
        }
        let coeffs = lift_kernel(ring, big_rank, &gens_in, &targets);
        let gens: Vec<FreeElem> = coeffs
            .into_iter()
            .map(|c| self.rp.nf_elem(&c))
            .filter(|c| !elem_is_zero(c))
            .collect();
        Subquotient::from_generators(&self.rp, self.over_a, self.shifts.clone(), gens, rels)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations
            .iter()
            .all(|r| elem_is_homogeneous(r, &self.shifts))
    }
}

/// A subquotient span(gens)/span(bottom) of a free module, with minimal
/// chosen generators and an exact membership/representation oracle.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub rp: Arc<RingPresentation>,
    pub over_a: bool,
    pub ambient_rank: usize,
    pub ambient_shifts: Vec<i64>,
    pub gens: Vec<FreeElem>,
    pub gen_degrees: Vec<i64>,
    pub bottom: Vec<FreeElem>,
}

impl Subquotient {
    /// Build from raw generators: reduce each modulo `bottom`, then keep a
    /// minimal generating set greedily in increasing degree.
    pub fn from_generators(
        rp: &Arc<RingPresentation>,
        over_a: bool,
        ambient_shifts: Vec<i64>,
        raw_gens: Vec<FreeElem>,
        bottom: Vec<FreeElem>,
    ) -> Subquotient {
        let ring = &rp.ring;
        let rank = ambient_shifts.len();
        let bottom: Vec<FreeElem> = bottom.into_iter().filter(|b| !elem_is_zero(b)).collect();
        let bottom_gb = GroebnerBasis::new(ring, rank, &bottom, None);
        let mut candidates: Vec<(i64, usize, FreeElem)> = Vec::new();
        for (i, g) in raw_gens.into_iter().enumerate() {
            let g = bottom_gb.normal_form(&g).unwrap();
            if elem_is_zero(&g) {
                continue;
            }
            let d = elem_degree(&g, &ambient_shifts)
                .expect("homogeneous generator")
                .unwrap();
            candidates.push((d, i, g));
        }
        candidates.sort_by_key(|(d, i, _)| (*d, *i));
        let mut accepted: Vec<FreeElem> = Vec::new();
        let mut degrees: Vec<i64> = Vec::new();
        for (d, _, g) in candidates {
            let mut span = accepted.clone();
            span.extend(bottom.iter().cloned());
            let gb = GroebnerBasis::new(ring, rank, &span, None);
            if !gb.contains(&g).unwrap() {
                accepted.push(g);
                degrees.push(d);
            }
        }
        Subquotient {
            rp: Arc::clone(rp),
            over_a,
            ambient_rank: rank,
            ambient_shifts,
            gens: accepted,
            gen_degrees: degrees,
            bottom,
        }
    }

    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn tagged(&self) -> TaggedBasis {
        let mut all = self.gens.clone();
        all.extend(self.bottom.iter().cloned());
        TaggedBasis::new(&self.rp.ring, self.ambient_rank, &all)
    }

    /// Express an ambient vector in terms of the chosen generators modulo
    /// `bottom`; None when it is not in the span.
    pub fn express(&self, v: &FreeElem) -> Result<Option<Vec<Polynomial>>> {
        let tb = self.tagged();
        Ok(tb.express(v)?.map(|c| {
            c.into_iter()
                .take(self.gens.len())
                .map(|p| self.rp.nf(&p))
                .collect()
        }))
    }

    pub fn contains(&self, v: &FreeElem) -> Result<bool> {
        let mut all = self.gens.clone();
        all.extend(self.bottom.iter().cloned());
        GroebnerBasis::new(&self.rp.ring, self.ambient_rank, &all, None).contains(v)
    }

    /// Abstract presentation: generators of the subquotient as a cokernel.
    pub fn presentation(&self) -> ModulePresentation {
        let ring = &self.rp.ring;
        if self.gens.is_empty() {
            return ModulePresentation::zero_module(&self.rp, self.over_a);
        }
        let coeffs = lift_kernel(ring, self.ambient_rank, &self.gens, &self.bottom);
        let relations: Vec<FreeElem> = coeffs
            .into_iter()
            .map(|c| self.rp.nf_elem(&c))
            .filter(|c| !elem_is_zero(c))
            .collect();
        ModulePresentation {
            rp: Arc::clone(&self.rp),
            over_a: self.over_a,
            rank: self.gens.len(),
            shifts: self.gen_degrees.clone(),
            relations,
        }
    }
}

/// Intersection of two submodule spans of the same ambient free module.
pub fn submodule_intersection(
    rp: &Arc<RingPresentation>,
    rank: usize,
    left: &[FreeElem],
    right: &[FreeElem],
) -> Vec<FreeElem> {
    let ring = &rp.ring;
    let coeffs = lift_kernel(ring, rank, left, right);
    coeffs
        .into_iter()
        .map(|c| apply_columns(left, &c))
        .filter(|v| !elem_is_zero(v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::{MonomialOrder, PolyRing};

    fn example_ring() -> Arc<RingPresentation> {
        let r =
            PolyRing::new(FieldSpec::Prime(101), &["u", "x"], MonomialOrder::GrevLex).unwrap();
        let f = Polynomial::parse(&r, "u*x").unwrap();
        RingPresentation::new(&r, vec![f]).unwrap()
    }

    fn p(rp: &RingPresentation, s: &str) -> Polynomial {
        Polynomial::parse(&rp.ring, s).unwrap()
    }

    #[test]
    fn hilbert_of_quotients() {
        let rp = example_ring();
        let a = ModulePresentation::ring_module(&rp, true);
        assert_eq!(a.dim(), 1);
        let qx = {
            let r = PolyRing::new(FieldSpec::Rationals, &["x"], MonomialOrder::GrevLex).unwrap();
            let q = RingPresentation::regular(&r);
            ModulePresentation::ring_module(&q, false)
        };
        assert_eq!(qx.dim(), 1);
    }

    #[test]
    fn annihilators() {
        let rp = example_ring();
        // A/(u) -> (u)
        let iu = IdealData::new(&rp.ring, vec![p(&rp, "u")]).unwrap();
        let au = ModulePresentation::cyclic(&rp, true, &iu);
        assert!(au.annihilator().equals(&rp, &iu));
        // A over itself -> (0)
        let a = ModulePresentation::ring_module(&rp, true);
        assert!(a.annihilator().is_zero_in(&rp));
        // k = A/m -> m
        let m = IdealData::maximal(&rp.ring);
        let k = ModulePresentation::cyclic(&rp, true, &m);
        assert!(k.annihilator().equals(&rp, &m));
    }

    #[test]
    fn colon_examples() {
        let rp = example_ring();
        // (0 :_{A/(u)} (x)) = 0 since x is a nonzerodivisor on A/(u)
        let iu = IdealData::new(&rp.ring, vec![p(&rp, "u")]).unwrap();
        let au = ModulePresentation::cyclic(&rp, true, &iu);
        let ix = IdealData::new(&rp.ring, vec![p(&rp, "x")]).unwrap();
        assert!(au.colon_submodule(&ix).is_zero());
        // (0 :_A (0)) = A
        let a = ModulePresentation::ring_module(&rp, true);
        let z = IdealData::zero(&rp.ring);
        let full = a.colon_submodule(&z);
        assert_eq!(full.mu(), 1);
        // (0 :_k m) = k
        let m = IdealData::maximal(&rp.ring);
        let k = ModulePresentation::cyclic(&rp, true, &m);
        let kk = k.colon_submodule(&m);
        assert_eq!(kk.mu(), 1);
    }

    #[test]
    fn minimization_drops_units() {
        let rp = example_ring();
        // coker [ [1], [u] ] with a unit relation entry: the module is zero
        // after cancelling.
        let one = Polynomial::one(&rp.ring);
        let m = ModulePresentation {
            rp: Arc::clone(&rp),
            over_a: true,
            rank: 1,
            shifts: vec![0],
            relations: vec![vec![one]],
        };
        assert_eq!(m.mu(), 0);
    }

    #[test]
    fn mu_of_cyclic() {
        let rp = example_ring();
        let m = IdealData::maximal(&rp.ring);
        let k = ModulePresentation::cyclic(&rp, true, &m);
        assert_eq!(k.mu(), 1);
        assert_eq!(k.hilbert_series().length(), Some(BigInt::from(1)));
    }
}
