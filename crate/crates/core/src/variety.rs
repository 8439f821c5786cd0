//! Support-variety data: the T = k[t_1..t_c]-module C(U,V) = E(U,V) ⊗ k,
//! its annihilator and variety dimension, and the complexity cx from the
//! growth of the minimal-generator sequence, with stabilization reports over
//! ideal powers. The t_i carry cohomological degree 2; the parity split
//! reduces everything to the standard grading.

use crate::error::{Error, Result};
use crate::ext::{build_family, family_ext_table, ExtTable, FamilyKind};
use crate::field::{Coeff, FieldSpec};
use crate::ideal::IdealData;
use crate::interp::polynomial_degree;
use crate::linalg::Matrix;
use crate::modules::ModulePresentation;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::ring::RingPresentation;
use num::BigInt;
use std::sync::Arc;

/// The operator polynomial ring k[t_1..t_c].
pub fn t_ring(rp: &RingPresentation) -> Arc<PolyRing> {
    let c = rp.codim();
    let names: Vec<String> = (1..=c).map(|j| format!("t{j}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    PolyRing::new(rp.ring.field, &refs, MonomialOrder::GrevLex).expect("valid operator ring")
}

/// One Ext column reduced modulo the maximal ideal: k-dimensions per
/// cohomological degree and the scalar matrices of each t_j.
#[derive(Clone, Debug)]
pub struct TotalExtModK {
    pub t_ring: Arc<PolyRing>,
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    /// t_mats[j][i]: dims[i] x dims[i+2] scalar matrix (rows = source basis)
    pub t_mats: Vec<Vec<Vec<Vec<Coeff>>>>,
}

pub fn total_ext_mod_k(table: &ExtTable, n: usize) -> TotalExtModK {
    let field = table.rp.ring.field;
    let dims: Vec<usize> = table.cells[n].iter().map(|c| c.mu).collect();
    let mut t_mats = Vec::new();
    for per_n in &table.t_maps {
        let mut mats = Vec::new();
        for (i, map) in per_n[n].iter().enumerate() {
            let rows = dims[i];
            let cols = dims[i + 2];
            let mut m = vec![vec![field.zero(); cols]; rows];
            for (s, coeffs) in map.iter().enumerate() {
                for (r, p) in coeffs.iter().enumerate() {
                    m[s][r] = p.constant_term();
                }
            }
            mats.push(m);
        }
        t_mats.push(mats);
    }
    TotalExtModK {
        t_ring: t_ring(&table.rp),
        field,
        dims,
        t_mats,
    }
}

fn mat_mul(field: FieldSpec, a: &[Vec<Coeff>], b: &[Vec<Coeff>]) -> Vec<Vec<Coeff>> {
    let rows = a.len();
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    let mut out = vec![vec![field.zero(); cols]; rows];
    for (i, arow) in a.iter().enumerate() {
        for (m, av) in arow.iter().enumerate() {
            if av.is_zero() {
                continue;
            }
            for (jc, bv) in b[m].iter().enumerate() {
                out[i][jc] = field.add(&out[i][jc], &field.mul(av, bv));
            }
        }
    }
    out
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, d: u32, var: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var + 1 == nvars {
            cur[var] = d;
            out.push(Monomial(cur.clone()));
            cur[var] = 0;
            return;
        }
        for e in 0..=d {
            cur[var] = e;
            rec(nvars, d - e, var + 1, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, d, 0, &mut vec![0; nvars], &mut out);
    out
}

/// Composite scalar matrix of the monomial t^alpha starting at level i.
fn composite_at(c: &TotalExtModK, alpha: &Monomial, i: usize) -> Vec<Vec<Coeff>> {
    let field = c.field;
    let mut acc: Vec<Vec<Coeff>> = (0..c.dims[i])
        .map(|s| {
            (0..c.dims[i])
                .map(|r| if s == r { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    let mut level = i;
    for (j, &e) in alpha.0.iter().enumerate() {
        for _ in 0..e {
            acc = mat_mul(field, &acc, &c.t_mats[j][level]);
            level += 2;
        }
    }
    acc
}

/// Homogeneous forms of T annihilating every computed piece, up to t-degree
/// d_max; empirical within the window.
pub fn annihilator_t(c: &TotalExtModK, d_max: usize) -> IdealData {
    let nvars = c.t_ring.nvars();
    if c.dims.iter().all(|&d| d == 0) {
        return IdealData::unit(&c.t_ring);
    }
    let i_max = c.dims.len() - 1;
    let mut gens: Vec<Polynomial> = Vec::new();
    for d in 1..=d_max {
        if 2 * d > i_max {
            break;
        }
        let monos = monomials_of_degree(nvars, d as u32);
        // equations: sum_alpha x_alpha * M_alpha^{(i)}[s][r] = 0 for all
        // i with i + 2d <= i_max; no equations means every form annihilates
        let composites: Vec<Vec<(usize, Vec<Vec<Coeff>>)>> = monos
            .iter()
            .map(|alpha| {
                (0..=(i_max - 2 * d))
                    .filter(|&i| c.dims[i] > 0)
                    .map(|i| (i, composite_at(c, alpha, i)))
                    .collect()
            })
            .collect();
        let mut eq_count = 0;
        for &(i, ref first) in composites.first().map(|v| v.as_slice()).unwrap_or(&[]) {
            eq_count += c.dims[i] * first.first().map(|r| r.len()).unwrap_or(0);
        }
        let mut mat = Matrix::zero(c.field, eq_count, monos.len());
        for (a_idx, per_i) in composites.iter().enumerate() {
            let mut row = 0usize;
            for (_, m) in per_i {
                for mrow in m {
                    for v in mrow {
                        mat.set(row, a_idx, v.clone());
                        row += 1;
                    }
                }
            }
        }
        for ker in mat.kernel() {
            let terms: Vec<(Monomial, Coeff)> = monos
                .iter()
                .cloned()
                .zip(ker)
                .filter(|(_, cf)| !cf.is_zero())
                .collect();
            if !terms.is_empty() {
                gens.push(Polynomial::from_terms(&c.t_ring, terms));
            }
        }
    }
    let trp = RingPresentation::regular(&c.t_ring);
    let id = IdealData::new(&c.t_ring, gens).expect("homogeneous forms");
    IdealData {
        gens: id.minimal_gens(&trp),
        ring: Arc::clone(&c.t_ring),
    }
}

/// cx = 1 + max degree of the even and odd interpolating polynomials of the
/// mu-sequence; 0 when the sequence is eventually zero.
pub fn complexity(mu_sequence: &[usize]) -> Result<usize> {
    let tail_zero_from = {
        let mut k = mu_sequence.len();
        while k > 0 && mu_sequence[k - 1] == 0 {
            k -= 1;
        }
        k
    };
    if tail_zero_from + 1 < mu_sequence.len() || mu_sequence.iter().all(|&m| m == 0) {
        // vanishes for at least the last two degrees: finite projective
        // dimension within the window
        if mu_sequence[tail_zero_from..].iter().all(|&m| m == 0)
            && mu_sequence.len() - tail_zero_from >= 2
        {
            return Ok(0);
        }
    }
    let mut best: i64 = -1;
    for parity in 0..2usize {
        let vals: Vec<BigInt> = mu_sequence
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == parity)
            .map(|(_, &m)| BigInt::from(m))
            .collect();
        if vals.iter().all(|v| v == &BigInt::from(0)) {
            continue;
        }
        let mut found = None;
        for start in 0..vals.len().saturating_sub(1) {
            if let Some(d) = polynomial_degree(&vals[start..]) {
                found = Some(d);
                break;
            }
        }
        let d = found.ok_or_else(|| Error::NonPolynomialWindow("mu parity window".into()))?;
        best = best.max(d);
    }
    Ok((best + 1) as usize)
}

#[derive(Clone, Debug)]
pub struct SupportVarietyData {
    pub t_ring: Arc<PolyRing>,
    pub ann: IdealData,
    pub vdim: i64,
    pub cx: usize,
    pub mu_sequence: Vec<usize>,
}

/// Full support-variety analysis of one table column.
pub fn support_variety(table: &ExtTable, n: usize, d_max: usize) -> Result<SupportVarietyData> {
    let c = total_ext_mod_k(table, n);
    let ann = annihilator_t(&c, d_max);
    let trp = RingPresentation::regular(&c.t_ring);
    let vdim = ann.krull_dim(&trp);
    let cx = complexity(&c.dims)?;
    Ok(SupportVarietyData {
        t_ring: Arc::clone(&c.t_ring),
        ann,
        vdim,
        cx,
        mu_sequence: c.dims,
    })
}

#[derive(Clone, Debug)]
pub struct CxEntry {
    pub j: usize,
    pub cx: usize,
    pub vdim: i64,
    pub ann_strings: Vec<String>,
    pub mu_sequence: Vec<usize>,
    pub avb_ok: bool,
}

#[derive(Clone, Debug)]
pub struct CxReport {
    pub entries: Vec<CxEntry>,
    pub onset: Option<usize>,
    pub exploratory: bool,
}

fn cx_report_for_kind(
    m: &ModulePresentation,
    ideal: &IdealData,
    seed: &ModulePresentation,
    kind: FamilyKind,
    j_max: usize,
    i_max: usize,
    exploratory: bool,
) -> Result<CxReport> {
    let rp = &m.rp;
    let fam = build_family(rp, ideal, seed, kind, j_max)?;
    let trp = RingPresentation::regular(&t_ring(rp));
    let mut entries = Vec::new();
    for j in 0..=j_max {
        let piece = fam.presentations[j].clone();
        let unit = IdealData::unit(&rp.ring);
        let column = build_family(rp, &unit, &piece, FamilyKind::Constant, 0)?;
        let table = family_ext_table(m, &column, i_max)?;
        let data = support_variety(&table, 0, i_max / 2)?;
        let avb_ok = data.vdim == data.cx as i64 || (data.vdim == -1 && data.cx == 0);
        entries.push(CxEntry {
            j,
            cx: data.cx,
            vdim: data.vdim,
            ann_strings: data.ann.canonical_strings(&trp),
            mu_sequence: data.mu_sequence,
            avb_ok,
        });
    }
    let last = entries.last().expect("at least j = 0");
    let last_key = last.ann_strings.clone();
    let mut onset = Some(entries.len() - 1);
    for j in (0..entries.len() - 1).rev() {
        if entries[j].ann_strings == last_key {
            onset = Some(j);
        } else {
            break;
        }
    }
    if entries.len() == 1 {
        onset = Some(0);
    }
    Ok(CxReport {
        entries,
        onset,
        exploratory,
    })
}

/// cx_A(M, I^j N) and the T-annihilator per j, with the observed
/// stabilization onset.
pub fn cx_stability_report(
    m: &ModulePresentation,
    ideal: &IdealData,
    seed: &ModulePresentation,
    j_max: usize,
    i_max: usize,
) -> Result<CxReport> {
    cx_report_for_kind(m, ideal, seed, FamilyKind::IdealPower, j_max, i_max, false)
}

/// Same analysis for N/I^jN; evidence only, no stabilization claim.
pub fn open_question_table(
    m: &ModulePresentation,
    ideal: &IdealData,
    seed: &ModulePresentation,
    j_max: usize,
    i_max: usize,
) -> Result<CxReport> {
    cx_report_for_kind(
        m,
        ideal,
        seed,
        FamilyKind::QuotientFamily,
        j_max,
        i_max,
        true,
    )
}
