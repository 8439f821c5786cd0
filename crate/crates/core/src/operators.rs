//! Cohomology operators t_1..t_c on a resolution over A = Q/(f): lift the
//! differentials to Q, divide the composite d~ d~ by the regular sequence,
//! and verify the chain-map and commutation-up-to-homotopy properties.

use crate::error::{Error, Result};
use crate::free::*;
use crate::ideal::express_in_ideal;
use crate::linalg::Matrix;
use crate::poly::Monomial;
use crate::resolution::Resolution;
use crate::ring::RingPresentation;
use std::collections::HashMap;
use std::sync::Arc;

/// Operators extracted from a minimal resolution over A. `ops[j][i]` holds
/// the columns of t_{j+1} : F_{i+2} -> F_i, entries reduced into A.
#[derive(Clone, Debug)]
pub struct CohomOperators {
    pub rp: Arc<RingPresentation>,
    pub res: Resolution,
    pub lifts: Vec<Vec<FreeElem>>,
    pub ops: Vec<Vec<Vec<FreeElem>>>,
}

/// Normal-form lifts of the differentials with respect to the fixed GB of
/// (f); deterministic, and equal to the stored matrices since those are kept
/// reduced.
pub fn lift_resolution(res: &Resolution) -> Vec<Vec<FreeElem>> {
    res.maps
        .iter()
        .map(|cols| cols.iter().map(|c| res.rp.nf_elem(c)).collect())
        .collect()
}

/// Solve d~_{i-1} d~_i = sum_j f_j t~_j entrywise by division with
/// representation against [f_1..f_c], then reduce t~ into A.
pub fn eisenbud_operators(res: &Resolution) -> Result<CohomOperators> {
    let rp = Arc::clone(&res.rp);
    let ring = &rp.ring;
    let c = rp.codim();
    let lifts = lift_resolution(res);
    let mut ops: Vec<Vec<Vec<FreeElem>>> = vec![Vec::new(); c];
    for i in 2..=res.length() {
        let target_rank = res.betti(i - 2);
        let mut per_j: Vec<Vec<FreeElem>> = vec![Vec::new(); c];
        for col in &lifts[i - 1] {
            let composite = if lifts[i - 2].is_empty() {
                elem_zero(ring, target_rank)
            } else {
                apply_columns(&lifts[i - 2], col)
            };
            let mut tcols: Vec<FreeElem> = vec![elem_zero(ring, target_rank); c];
            for (k, entry) in composite.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let q = express_in_ideal(ring, &rp.regular_sequence, entry)?
                    .ok_or_else(|| {
                        Error::Internal("composite differential not in (f)".into())
                    })?;
                for (j, qj) in q.iter().enumerate() {
                    tcols[j][k] = rp.nf(qj);
                }
            }
            for j in 0..c {
                per_j[j].push(tcols[j].clone());
            }
        }
        for j in 0..c {
            ops[j].push(per_j[j].clone());
        }
    }
    Ok(CohomOperators {
        rp,
        res: res.clone(),
        lifts,
        ops,
    })
}

impl CohomOperators {
    pub fn codim(&self) -> usize {
        self.ops.len()
    }

    /// Columns of t_j (0-based j) viewed as a map F_source -> F_{source-2}.
    pub fn operator(&self, j: usize, source: usize) -> &[FreeElem] {
        &self.ops[j][source - 2]
    }

    /// Largest source level with an extracted operator.
    pub fn max_source(&self) -> usize {
        if self.ops.is_empty() {
            self.res.length()
        } else {
            self.ops[0].len() + 1
        }
    }
}

/// Chain-map defects d_{i-2} t_j^{(i)} - t_j^{(i-1)} d_i reduced over A;
/// lists every (j, source level) with a nonzero defect.
#[derive(Clone, Debug)]
pub struct ChainMapReport {
    pub checked_through: usize,
    pub defects: Vec<(usize, usize)>,
}

impl ChainMapReport {
    pub fn ok(&self) -> bool {
        self.defects.is_empty()
    }
}

pub fn verify_chain_map(ops: &CohomOperators, i_bound: usize) -> ChainMapReport {
    let rp = &ops.rp;
    let res = &ops.res;
    let top = i_bound.min(ops.max_source());
    let mut defects = Vec::new();
    for j in 0..ops.codim() {
        for i in 3..=top {
            if res.betti(i - 3) == 0 || res.betti(i) == 0 {
                continue;
            }
            let t_hi = ops.operator(j, i);
            let t_lo = ops.operator(j, i - 1);
            for (g, tcol) in t_hi.iter().enumerate() {
                let left = if res.maps[i - 3].is_empty() {
                    elem_zero(&rp.ring, res.betti(i - 3))
                } else {
                    apply_columns(&res.maps[i - 3], tcol)
                };
                let right = if t_lo.is_empty() {
                    elem_zero(&rp.ring, res.betti(i - 3))
                } else {
                    apply_columns(t_lo, &res.maps[i - 1][g])
                };
                let defect = rp.nf_elem(&elem_sub(&left, &right));
                if !elem_is_zero(&defect) {
                    defects.push((j, i));
                    break;
                }
            }
        }
    }
    ChainMapReport {
        checked_through: top,
        defects,
    }
}

#[derive(Clone, Debug)]
pub struct HomotopyReport {
    pub solvable: bool,
    pub unknowns: usize,
    pub equations: usize,
}

/// Monomial basis of the graded piece A_d: degree-d monomials of Q outside
/// the lead-term ideal of GB(f).
fn quotient_basis(rp: &RingPresentation, d: i64) -> Vec<Monomial> {
    if d < 0 {
        return Vec::new();
    }
    let nvars = rp.ring.nvars();
    let leads: Vec<Monomial> = rp
        .f_basis()
        .lead_terms()
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    enumerate_monomials(nvars, d as u32, 0, &mut cur, &mut |m: &Monomial| {
        if leads.iter().all(|l| m.try_div(l).is_none()) {
            out.push(m.clone());
        }
    });
    out
}

fn enumerate_monomials(
    nvars: usize,
    remaining: u32,
    var: usize,
    cur: &mut Vec<u32>,
    emit: &mut impl FnMut(&Monomial),
) {
    if var + 1 == nvars {
        cur[var] = remaining;
        emit(&Monomial(cur.clone()));
        cur[var] = 0;
        return;
    }
    for e in 0..=remaining {
        cur[var] = e;
        enumerate_monomials(nvars, remaining - e, var + 1, cur, emit);
    }
    cur[var] = 0;
}

/// Solve for a homotopy h with t_j t_j' - t_j' t_j = d h + h d on source
/// levels 4..=i_bound+4, by field linear algebra per graded piece. h_s maps
/// F_s to F_{s-3}; every entry is a homogeneous element of A.
pub fn verify_commute_homotopy(
    ops: &CohomOperators,
    j: usize,
    jp: usize,
    i_bound: usize,
) -> Result<HomotopyReport> {
    let rp = &ops.rp;
    let res = &ops.res;
    let field = rp.ring.field;
    if j == jp || ops.codim() < 2 {
        return Ok(HomotopyReport {
            solvable: true,
            unknowns: 0,
            equations: 0,
        });
    }
    let top = i_bound + 4;
    if ops.max_source() < top {
        return Err(Error::WindowExceedsResolution {
            need: top,
            have: ops.max_source(),
        });
    }
    // Unknown registry: (source level, column, row, basis monomial) -> index.
    let mut index: HashMap<(usize, usize, usize, Monomial), usize> = HashMap::new();
    let mut order: Vec<(usize, usize, usize, Monomial)> = Vec::new();
    for s in 3..=top {
        for col in 0..res.betti(s) {
            for r in 0..res.betti(s - 3) {
                let d = res.shifts[s][col] - res.shifts[s - 3][r];
                for m in quotient_basis(rp, d) {
                    let key = (s, col, r, m);
                    index.insert(key.clone(), order.len());
                    order.push(key);
                }
            }
        }
    }
    let nunk = order.len();
    // Equation registry: (source level, column, target row, monomial of the
    // commutator entry degree) -> equation index.
    let mut eq_index: HashMap<(usize, usize, usize, Monomial), usize> = HashMap::new();
    let mut rows: Vec<Vec<(usize, crate::field::Coeff)>> = Vec::new();
    let mut rhs: Vec<crate::field::Coeff> = Vec::new();
    let mut eq_of = |key: (usize, usize, usize, Monomial),
                     rows: &mut Vec<Vec<(usize, crate::field::Coeff)>>,
                     rhs: &mut Vec<crate::field::Coeff>|
     -> usize {
        *eq_index.entry(key).or_insert_with(|| {
            rows.push(Vec::new());
            rhs.push(field.zero());
            rows.len() - 1
        })
    };
    for s in 4..=top {
        if res.betti(s) == 0 || res.betti(s - 4) == 0 {
            continue;
        }
        let t1_hi = ops.operator(j, s);
        let t2_hi = ops.operator(jp, s);
        let t1_lo = ops.operator(j, s - 2);
        let t2_lo = ops.operator(jp, s - 2);
        for col in 0..res.betti(s) {
            let comm = rp.nf_elem(&elem_sub(
                &apply_columns(t1_lo, &t2_hi[col]),
                &apply_columns(t2_lo, &t1_hi[col]),
            ));
            // RHS contributions from the commutator entry.
            for (r, entry) in comm.iter().enumerate() {
                for (m, cf) in &entry.terms {
                    let e = eq_of((s, col, r, m.clone()), &mut rows, &mut rhs);
                    rhs[e] = field.add(&rhs[e], cf);
                }
            }
            // d_{s-3} h_s: entry r = sum over mid of d[mid][r] * h_s[col][mid].
            for mid in 0..res.betti(s - 3) {
                let dh = res.shifts[s][col] - res.shifts[s - 3][mid];
                for m in quotient_basis(rp, dh) {
                    let u = index[&(s, col, mid, m.clone())];
                    for r in 0..res.betti(s - 4) {
                        let dentry = &res.maps[s - 4][mid][r];
                        let prod = rp.nf(&dentry.mul_term(&m, &field.one()));
                        for (mm, cf) in &prod.terms {
                            let e = eq_of((s, col, r, mm.clone()), &mut rows, &mut rhs);
                            rows[e].push((u, cf.clone()));
                        }
                    }
                }
            }
            // h_{s-1} d_s: entry r = sum over g of h_{s-1}[g][r] * d_s[col][g].
            for g in 0..res.betti(s - 1) {
                let dentry = &res.maps[s - 1][col][g];
                if dentry.is_zero() {
                    continue;
                }
                for r in 0..res.betti(s - 4) {
                    let dh = res.shifts[s - 1][g] - res.shifts[s - 4][r];
                    for m in quotient_basis(rp, dh) {
                        let u = index[&(s - 1, g, r, m.clone())];
                        let prod = rp.nf(&dentry.mul_term(&m, &field.one()));
                        for (mm, cf) in &prod.terms {
                            let e = eq_of((s, col, r, mm.clone()), &mut rows, &mut rhs);
                            rows[e].push((u, cf.clone()));
                        }
                    }
                }
            }
        }
    }
    let neq = rows.len();
    let mut mat = Matrix::zero(field, neq, nunk);
    for (e, row) in rows.iter().enumerate() {
        for (u, cf) in row {
            let cur = mat.get(e, *u).clone();
            mat.set(e, *u, field.add(&cur, cf));
        }
    }
    let solvable = mat.solve(&rhs).is_some();
    Ok(HomotopyReport {
        solvable,
        unknowns: nunk,
        equations: neq,
    })
}
