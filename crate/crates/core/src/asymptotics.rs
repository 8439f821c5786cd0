//! Asymptotic invariants of a Rees family: the stable annihilator and
//! limiting dimension, analytic spread, filter-regular elements, the
//! modified multiplicity d_a with its fitted degree theta, associated-prime
//! stabilization across an Ext table, and stable injectivity of the joint
//! (i, n) -> (i+2, n+1) map.

use crate::error::{Error, Result};
use crate::ext::{t_ambient_map, u_ambient_map, ExtTable, ReesFamily};
use crate::free::*;
use crate::groebner::{lift_kernel, GroebnerBasis};
use crate::ideal::{is_monomial_ideal, monomial_minimal_primes, IdealData};
use crate::interp::polynomial_degree;
use crate::modules::ModulePresentation;
use crate::poly::Polynomial;
use crate::ring::RingPresentation;
use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Stable annihilator of the family: the common value of ann N_n for large n
/// within the window, with the first index from which it holds.
#[derive(Clone, Debug)]
pub struct StableAnnihilator {
    pub ann: IdealData,
    pub onset: usize,
    pub stabilized: bool,
    pub per_piece: Vec<IdealData>,
}

pub fn stable_annihilator(family: &ReesFamily) -> StableAnnihilator {
    let rp = &family.rp;
    let per_piece: Vec<IdealData> = family
        .presentations
        .iter()
        .map(|p| p.annihilator())
        .collect();
    let last = per_piece.last().expect("at least one piece").clone();
    let mut onset = per_piece.len() - 1;
    while onset > 0 && per_piece[onset - 1].equals(rp, &last) {
        onset -= 1;
    }
    // a window of length one past the onset says nothing about stability
    let stabilized = onset + 1 < per_piece.len() || onset == 0;
    StableAnnihilator {
        ann: last,
        onset,
        stabilized,
        per_piece,
    }
}

/// limDim N = dim A/L_N; -1 when the pieces are eventually zero.
pub fn limdim(rp: &RingPresentation, stable: &StableAnnihilator) -> i64 {
    stable.ann.krull_dim(rp)
}

/// Analytic spread: 1 + degree of the polynomial growth of
/// n -> dim_k N_n / m N_n, and 0 when the fiber vanishes eventually.
pub fn analytic_spread(family: &ReesFamily) -> Result<usize> {
    let mus: Vec<BigInt> = family
        .pieces
        .iter()
        .map(|p| BigInt::from(p.mu()))
        .collect();
    spread_from_mu(&mus)
}

pub fn spread_from_mu(mus: &[BigInt]) -> Result<usize> {
    if mus.last().map(|m| m.is_zero()).unwrap_or(true) {
        return Ok(0);
    }
    for start in 0..mus.len().saturating_sub(1) {
        if let Some(d) = polynomial_degree(&mus[start..]) {
            return Ok(if d < 0 { 0 } else { d as usize + 1 });
        }
    }
    Err(Error::NonPolynomialWindow("mu-sequence window".into()))
}

/// A degree-s filter-regular element: a combination u of degree-s products
/// of the Rees generators with (0 :_N u)_n = 0 for n in the verified window.
#[derive(Clone, Debug)]
pub struct FilterRegular {
    pub element: Polynomial,
    pub rees_degree: usize,
    pub verified_from: usize,
    pub verified_to: usize,
}

/// Kernel of multiplication by g as a map piece(n) -> piece(n + s); true
/// when it vanishes.
fn multiplication_injective(
    family: &ReesFamily,
    g: &Polynomial,
    n: usize,
    s: usize,
) -> Result<bool> {
    let rp = &family.rp;
    let ring = &rp.ring;
    let src = &family.pieces[n];
    let tgt = &family.pieces[n + s];
    if src.gens.is_empty() {
        return Ok(true);
    }
    let scaled: Vec<FreeElem> = src
        .gens
        .iter()
        .map(|v| rp.nf_elem(&elem_mul_poly(v, g)))
        .collect();
    let kernel = lift_kernel(ring, src.ambient_rank, &scaled, &tgt.bottom);
    let src_bottom = GroebnerBasis::new(ring, src.ambient_rank, &src.bottom, None);
    for coeffs in kernel {
        let mut w = elem_zero(ring, src.ambient_rank);
        for (c, v) in coeffs.iter().zip(&src.gens) {
            w = elem_add(&w, &elem_mul_poly(v, c));
        }
        if !src_bottom.contains(&rp.nf_elem(&w))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degree-s monomials in the Rees generators.
fn rees_power_products(family: &ReesFamily, s: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::one(&family.rp.ring)];
    for _ in 0..s {
        let mut next = Vec::new();
        for p in &out {
            for g in &family.rees_gens {
                next.push(p.mul(g));
            }
        }
        out = next;
    }
    out
}

pub fn filter_regular_search(
    family: &ReesFamily,
    s_max: usize,
    trials: usize,
    verify_from: usize,
    seed: u64,
) -> Result<FilterRegular> {
    let rp = &family.rp;
    let field = rp.ring.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 1..=s_max {
        let products = rees_power_products(family, s);
        let top = family.n_max.saturating_sub(s);
        if verify_from > top {
            continue;
        }
        for trial in 0..trials {
            // first trial tries the generators themselves, then random
            // combinations
            let candidates: Vec<Polynomial> = if trial == 0 {
                products.clone()
            } else {
                let mut acc = Polynomial::zero(&rp.ring);
                for p in &products {
                    let c = field.from_int(rng.gen_range(1..=100));
                    acc = acc.add(&p.scale(&c));
                }
                vec![rp.nf(&acc)]
            };
            'cand: for u in candidates {
                if u.is_zero() {
                    continue;
                }
                for n in verify_from..=top {
                    if !multiplication_injective(family, &u, n, s)? {
                        continue 'cand;
                    }
                }
                return Ok(FilterRegular {
                    element: u,
                    rees_degree: s,
                    verified_from: verify_from,
                    verified_to: top,
                });
            }
        }
    }
    Err(Error::Internal(
        "no filter-regular element found within the trial budget".into(),
    ))
}

/// Modified multiplicity d_a(W, j): zero when dim W_j < dim A/a, else the
/// multiplicity of W_j with respect to the irrelevant maximal ideal.
pub fn d_invariant(
    rp: &RingPresentation,
    pieces: &[ModulePresentation],
    a: &IdealData,
) -> Result<Vec<BigInt>> {
    let base_dim = a.krull_dim(rp);
    let mut out = Vec::new();
    for w in pieces {
        let ann = w.annihilator();
        for g in &a.gens {
            if !ann.contains(rp, g)? {
                return Err(Error::NotInAnnihilator(out.len() as i64));
            }
        }
        let hs = w.hilbert_series();
        if hs.dim() < base_dim {
            out.push(BigInt::zero());
        } else {
            out.push(hs.multiplicity());
        }
    }
    Ok(out)
}

/// Degree of the polynomial interpolating the d-values on the window; -1
/// for the zero window.
pub fn theta(values: &[BigInt]) -> Result<i64> {
    polynomial_degree(values).ok_or_else(|| Error::NonPolynomialWindow("d-value window".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimalityCert {
    MonomialSplit,
    UserAsserted,
}

/// A prime with the method that certified it.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    pub ideal: IdealData,
    pub cert: PrimalityCert,
}

impl PrimeIdeal {
    /// Variable-generated primes: certified when every f_j reduces to zero
    /// modulo the variables, so the quotient is a polynomial ring.
    pub fn from_vars(rp: &Arc<RingPresentation>, vars: &[usize]) -> Result<PrimeIdeal> {
        let ring = &rp.ring;
        let gens: Vec<Polynomial> = vars.iter().map(|&v| Polynomial::var(ring, v)).collect();
        let ideal = IdealData::new(ring, gens)?;
        let gb = ideal.gb(rp);
        for f in &rp.regular_sequence {
            if !gb.contains(&vec![f.clone()])? {
                return Err(Error::UncertifiedPrime(format!(
                    "quotient by variables {:?} is not a polynomial ring",
                    vars
                )));
            }
        }
        Ok(PrimeIdeal {
            ideal,
            cert: PrimalityCert::MonomialSplit,
        })
    }

    pub fn user_asserted(ideal: IdealData) -> PrimeIdeal {
        PrimeIdeal {
            ideal,
            cert: PrimalityCert::UserAsserted,
        }
    }

    pub fn canonical_key(&self, rp: &RingPresentation) -> Vec<String> {
        self.ideal.canonical_strings(rp)
    }
}

/// Candidates from the minimal primes of a monomial annihilator.
pub fn candidate_primes_from_ann(
    rp: &Arc<RingPresentation>,
    ann: &IdealData,
) -> Vec<PrimeIdeal> {
    // work with the Q-level ideal: the defining sequence f lies in every
    // annihilator upstairs
    let mut gens = ann.minimal_gens(rp);
    gens.extend(rp.regular_sequence.iter().cloned());
    if !is_monomial_ideal(&gens) {
        return Vec::new();
    }
    let monos: Vec<_> = gens
        .iter()
        .filter_map(|g| g.leading().map(|(m, _)| m.clone()))
        .collect();
    monomial_minimal_primes(rp.ring.nvars(), &monos)
        .into_iter()
        .filter_map(|vars| PrimeIdeal::from_vars(rp, &vars).ok())
        .collect()
}

/// Ass membership by the colon criterion: p is associated iff
/// ann(0 :_E p) = p.
pub fn associated_primes(
    e: &ModulePresentation,
    candidates: &[PrimeIdeal],
) -> Result<Vec<PrimeIdeal>> {
    let rp = &e.rp;
    let mut pool: Vec<PrimeIdeal> = candidates.to_vec();
    let ann = e.annihilator();
    for extra in candidate_primes_from_ann(rp, &ann) {
        let key = extra.canonical_key(rp);
        if !pool.iter().any(|p| p.canonical_key(rp) == key) {
            pool.push(extra);
        }
    }
    let mut out: Vec<PrimeIdeal> = Vec::new();
    for p in pool {
        let socle = e.colon_submodule(&p.ideal);
        if socle.is_zero() {
            continue;
        }
        let socle_ann = socle.presentation().annihilator();
        if socle_ann.equals(rp, &p.ideal) {
            out.push(p);
        }
    }
    out.sort_by_key(|p| p.canonical_key(rp));
    Ok(out)
}

pub type PrimeSet = BTreeSet<Vec<String>>;

/// Observed stabilization of associated primes over the table: the smallest
/// (i0, n0) with constant even and odd Ass sets on the upper-right
/// rectangle, plus the union over every cell. Empirical, not a proof.
#[derive(Clone, Debug)]
pub struct AssStabilityReport {
    pub onset: Option<(usize, usize)>,
    pub even_set: PrimeSet,
    pub odd_set: PrimeSet,
    pub union: PrimeSet,
    pub per_cell: Vec<Vec<PrimeSet>>,
}

pub fn ass_stability_report(
    table: &ExtTable,
    candidates: &[PrimeIdeal],
) -> Result<AssStabilityReport> {
    let rp = &table.rp;
    let mut per_cell: Vec<Vec<PrimeSet>> = Vec::new();
    let mut union: PrimeSet = BTreeSet::new();
    for row in &table.cells {
        let mut out_row = Vec::new();
        for cell in row {
            let primes = associated_primes(&cell.presentation(), candidates)?;
            let set: PrimeSet = primes.iter().map(|p| p.canonical_key(rp)).collect();
            union.extend(set.iter().cloned());
            out_row.push(set);
        }
        per_cell.push(out_row);
    }
    let i_max = table.i_max;
    let n_max = table.n_max;
    let rect_constant = |i0: usize, n0: usize| -> Option<(PrimeSet, PrimeSet)> {
        let mut even: Option<PrimeSet> = None;
        let mut odd: Option<PrimeSet> = None;
        for n in n0..=n_max {
            for i in i0..=i_max {
                let set = &per_cell[n][i];
                let slot = if i % 2 == 0 { &mut even } else { &mut odd };
                match slot {
                    None => *slot = Some(set.clone()),
                    Some(prev) if prev != set => return None,
                    _ => {}
                }
            }
        }
        Some((
            even.unwrap_or_default(),
            odd.unwrap_or_default(),
        ))
    };
    let mut onset = None;
    let mut even_set = BTreeSet::new();
    let mut odd_set = BTreeSet::new();
    'search: for total in 0..=(i_max + n_max) {
        for i0 in 0..=total.min(i_max) {
            let n0 = total - i0;
            if n0 > n_max {
                continue;
            }
            if let Some((e, o)) = rect_constant(i0, n0) {
                onset = Some((i0, n0));
                even_set = e;
                odd_set = o;
                break 'search;
            }
        }
    }
    Ok(AssStabilityReport {
        onset,
        even_set,
        odd_set,
        union,
        per_cell,
    })
}

/// Injectivity of the joint map cell(i, n) -> ⊕_{g,j} cell(i+2, n+1) given
/// by all composites u_g t_j, checked at ambient level.
fn joint_map_injective(table: &ExtTable, i: usize, n: usize) -> Result<bool> {
    let rp = &table.rp;
    let ring = &rp.ring;
    let src = table.cell(i, n);
    if src.sq.gens.is_empty() {
        return Ok(true);
    }
    if i + 2 > table.ops.max_source() {
        return Ok(false);
    }
    let k_src = table.family.presentations[n].rank;
    let k_tgt = table.family.presentations[n + 1].rank;
    let b_tgt = table.res.betti(i + 2);
    let tgt = table.cell(i + 2, n + 1);
    let block = tgt.sq.ambient_rank;
    let combos: Vec<(usize, usize)> = (0..table.u_maps.len())
        .flat_map(|g| (0..table.t_maps.len()).map(move |j| (g, j)))
        .collect();
    if combos.is_empty() {
        return Ok(false);
    }
    let big = block * combos.len();
    let mut gens_in: Vec<FreeElem> = Vec::new();
    for v in &src.sq.gens {
        let mut col = elem_zero(ring, big);
        for (slot, &(g, j)) in combos.iter().enumerate() {
            let tv = t_ambient_map(&table.ops, j, i, k_src, v);
            let action = &table.family.actions[g][n];
            let w = u_ambient_map(rp, b_tgt, k_src, k_tgt, action, &tv);
            for (r, p) in w.iter().enumerate() {
                col[slot * block + r] = p.clone();
            }
        }
        gens_in.push(col);
    }
    let mut targets: Vec<FreeElem> = Vec::new();
    for (slot, _) in combos.iter().enumerate() {
        for b in &tgt.sq.bottom {
            let mut col = elem_zero(ring, big);
            for (r, p) in b.iter().enumerate() {
                col[slot * block + r] = p.clone();
            }
            targets.push(col);
        }
    }
    let kernel = lift_kernel(ring, big, &gens_in, &targets);
    let src_bottom = GroebnerBasis::new(ring, src.sq.ambient_rank, &src.sq.bottom, None);
    for coeffs in kernel {
        let mut w = elem_zero(ring, src.sq.ambient_rank);
        for (c, v) in coeffs.iter().zip(&src.sq.gens) {
            w = elem_add(&w, &elem_mul_poly(v, c));
        }
        if !src_bottom.contains(&rp.nf_elem(&w))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest (i0, n0) such that the joint one-step map is injective on every
/// cell with i >= i0, n >= n0 inside the table margin.
pub fn p_stable_injectivity(table: &ExtTable) -> Result<Option<(usize, usize)>> {
    if table.i_max < 2 || table.n_max < 1 {
        return Ok(None);
    }
    let i_top = table.i_max - 2;
    let n_top = table.n_max - 1;
    let mut inj = vec![vec![false; i_top + 1]; n_top + 1];
    for n in 0..=n_top {
        for i in 0..=i_top {
            inj[n][i] = joint_map_injective(table, i, n)?;
        }
    }
    let all_from = |i0: usize, n0: usize| -> bool {
        (n0..=n_top).all(|n| (i0..=i_top).all(|i| inj[n][i]))
    };
    for total in 0..=(i_top + n_top) {
        for i0 in 0..=total.min(i_top) {
            let n0 = total - i0;
            if n0 > n_top {
                continue;
            }
            if all_from(i0, n0) {
                return Ok(Some((i0, n0)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{build_family, family_ext_table, FamilyKind};
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
    fn stable_annihilator_of_ideal_powers() {
        let rp = example_ring();
        let ix = IdealData::new(&rp.ring, vec![p(&rp, "x")]).unwrap();
        let a = ModulePresentation::ring_module(&rp, true);
        let fam = build_family(&rp, &ix, &a, FamilyKind::IdealPower, 4).unwrap();
        let stable = stable_annihilator(&fam);
        let iu = IdealData::new(&rp.ring, vec![p(&rp, "u")]).unwrap();
        assert!(stable.ann.equals(&rp, &iu));
        assert_eq!(stable.onset, 1);
        assert!(stable.stabilized);
        assert_eq!(limdim(&rp, &stable), 1);
    }

    #[test]
    fn stable_annihilator_of_constant_family() {
        let rp = example_ring();
        let iu = IdealData::new(&rp.ring, vec![p(&rp, "u")]).unwrap();
        let m = ModulePresentation::cyclic(&rp, true, &iu);
        let unit = IdealData::unit(&rp.ring);
        let fam = build_family(&rp, &unit, &m, FamilyKind::Constant, 3).unwrap();
        let stable = stable_annihilator(&fam);
        assert!(stable.ann.equals(&rp, &iu));
        assert_eq!(stable.onset, 0);
    }

    #[test]
    fn zero_family_has_unit_annihilator() {
        let rp = example_ring();
        let ix = IdealData::new(&rp.ring, vec![p(&rp, "x")]).unwrap();
        let d = ModulePresentation::cyclic(&rp, true, &ix);
        let fam = build_family(&rp, &ix, &d, FamilyKind::IdealPower, 3).unwrap();
        let stable = stable_annihilator(&fam);
        assert!(stable.ann.is_unit(&rp));
        assert_eq!(limdim(&rp, &stable), -1);
    }

    #[test]
    fn spreads() {
        let rp = example_ring();
        let ix = IdealData::new(&rp.ring, vec![p(&rp, "x")]).unwrap();
        let a = ModulePresentation::ring_module(&rp, true);
        let fam = build_family(&rp, &ix, &a, FamilyKind::IdealPower, 4).unwrap();
        assert_eq!(analytic_spread(&fam).unwrap(), 1);

        let r = PolyRing::new(FieldSpec::Rationals, &["x", "y"], MonomialOrder::GrevLex).unwrap();
        let q = RingPresentation::regular(&r);
        let m = IdealData::maximal(&r);
        let aq = ModulePresentation::ring_module(&q, true);
        let fam2 = build_family(&q, &m, &aq, FamilyKind::IdealPower, 4).unwrap();
        assert_eq!(analytic_spread(&fam2).unwrap(), 2);

        let zero = ModulePresentation::cyclic(&rp, true, &ix);
        let fam0 = build_family(&rp, &ix, &zero, FamilyKind::IdealPower, 3).unwrap();
        assert_eq!(analytic_spread(&fam0).unwrap(), 0);
    }

    #[test]
    fn filter_regular_on_rees_of_principal() {
        let rp = example_ring();
        let ix = IdealData::new(&rp.ring, vec![p(&rp, "x")]).unwrap();
        let a = ModulePresentation::ring_module(&rp, true);
        let fam = build_family(&rp, &ix, &a, FamilyKind::IdealPower, 4).unwrap();
        // x itself is filter-regular from n = 1 on (x * x^n != 0) but not at
        // n = 0 ((0 :_A x) = (u))
        let fr = filter_regular_search(&fam, 2, 3, 1, 7).unwrap();
        assert_eq!(fr.rees_degree, 1);
        assert!(multiplication_injective(&fam, &fr.element, 1, 1).unwrap());
        assert!(!multiplication_injective(&fam, &p(&rp, "x"), 0, 1).unwrap());
    }

    #[test]
    fn d_values_and_theta() {
        let rp = example_ring();
        let m = IdealData::maximal(&rp.ring);
        let k = ModulePresentation::cyclic(&rp, true, &m);
        let pieces = vec![k.clone(), k.clone(), k.clone(), k.clone()];
        let d = d_invariant(&rp, &pieces, &m).unwrap();
        assert!(d.iter().all(|v| *v == BigInt::from(1)));
        assert_eq!(theta(&d).unwrap(), 0);

        // W_j = I^j A, a = (u): every piece is A/(u), multiplicity 1
        let ix = IdealData::new(&rp.ring, vec![p(&rp, "x")]).unwrap();
        let a = ModulePresentation::ring_module(&rp, true);
        let fam = build_family(&rp, &ix, &a, FamilyKind::IdealPower, 4).unwrap();
        let iu = IdealData::new(&rp.ring, vec![p(&rp, "u")]).unwrap();
        let tail: Vec<ModulePresentation> = fam.presentations[1..].to_vec();
        let dv = d_invariant(&rp, &tail, &iu).unwrap();
        assert!(dv.iter().all(|v| *v == BigInt::from(1)));
        let th = theta(&dv).unwrap();
        assert_eq!(th, 0);
        assert!(th <= fam.mu_ideal() as i64 - 1);
        // zero window
        assert_eq!(theta(&[BigInt::zero(), BigInt::zero(), BigInt::zero()]).unwrap(), -1);
    }

    #[test]
    fn associated_primes_examples() {
        let rp = example_ring();
        // A itself: (ux) = (u) ∩ (x)
        let a = ModulePresentation::ring_module(&rp, true);
        let ass = associated_primes(&a, &[]).unwrap();
        let keys: Vec<Vec<String>> = ass.iter().map(|p| p.canonical_key(&rp)).collect();
        assert_eq!(keys.len(), 2);
        let iu = IdealData::new(&rp.ring, vec![p(&rp, "u")]).unwrap();
        let ix = IdealData::new(&rp.ring, vec![p(&rp, "x")]).unwrap();
        assert!(keys.contains(&iu.canonical_strings(&rp)));
        assert!(keys.contains(&ix.canonical_strings(&rp)));
        // k: only the maximal ideal
        let m = IdealData::maximal(&rp.ring);
        let k = ModulePresentation::cyclic(&rp, true, &m);
        let ass_k = associated_primes(&k, &[]).unwrap();
        assert_eq!(ass_k.len(), 1);
        assert!(ass_k[0].ideal.equals(&rp, &m));
        // A/p for p = (u)
        let ap = ModulePresentation::cyclic(&rp, true, &iu);
        let ass_p = associated_primes(&ap, &[]).unwrap();
        assert_eq!(ass_p.len(), 1);
        assert!(ass_p[0].ideal.equals(&rp, &iu));
    }

    #[test]
    fn ass_stability_on_example_table() {
        let rp = example_ring();
        let iu = IdealData::new(&rp.ring, vec![p(&rp, "u")]).unwrap();
        let m = ModulePresentation::cyclic(&rp, true, &iu);
        let unit = IdealData::unit(&rp.ring);
        let fam = build_family(&rp, &unit, &m, FamilyKind::Constant, 2).unwrap();
        let table = family_ext_table(&m, &fam, 6).unwrap();
        let report = ass_stability_report(&table, &[]).unwrap();
        let mideal = IdealData::maximal(&rp.ring);
        let m_key = mideal.canonical_strings(&rp);
        let u_key = iu.canonical_strings(&rp);
        assert_eq!(report.onset, Some((1, 0)));
        assert!(report.odd_set.is_empty());
        assert_eq!(report.even_set.len(), 1);
        assert!(report.even_set.contains(&m_key));
        assert_eq!(report.union.len(), 2);
        assert!(report.union.contains(&m_key) && report.union.contains(&u_key));
    }

    #[test]
    fn injectivity_on_example_table() {
        let rp = example_ring();
        let iu = IdealData::new(&rp.ring, vec![p(&rp, "u")]).unwrap();
        let m = ModulePresentation::cyclic(&rp, true, &iu);
        let unit = IdealData::unit(&rp.ring);
        let fam = build_family(&rp, &unit, &m, FamilyKind::Constant, 2).unwrap();
        let table = family_ext_table(&m, &fam, 6).unwrap();
        let onset = p_stable_injectivity(&table).unwrap();
        assert!(matches!(onset, Some((i0, n0)) if i0 <= 1 && n0 == 0));
    }
}
