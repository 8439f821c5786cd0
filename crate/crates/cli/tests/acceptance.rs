//! Acceptance suite: one test per criterion, each printing a pass line.
//! Criteria 1-9 exercise the library directly; criterion 10 runs the binary
//! at two worker counts and compares the produced bytes.

use cihom_core::asymptotics::{
    ass_stability_report, d_invariant, p_stable_injectivity, stable_annihilator, theta,
};
use cihom_core::ext::{
    build_family, certify_generation_box, family_ext_table, gulliksen_column_check, BoxStatus,
    ExtTable, FamilyKind,
};
use cihom_core::field::FieldSpec;
use cihom_core::free::{elem_add, elem_mul_poly, elem_zero};
use cihom_core::ideal::{express_in_ideal, IdealData};
use cihom_core::modules::ModulePresentation;
use cihom_core::operators::{eisenbud_operators, verify_chain_map, verify_commute_homotopy};
use cihom_core::poly::{MonomialOrder, PolyRing, Polynomial};
use cihom_core::resolution::resolve;
use cihom_core::ring::RingPresentation;
use cihom_core::variety::cx_stability_report;
use num::BigInt;
use std::sync::Arc;
use std::time::Instant;

fn example_ring() -> Arc<RingPresentation> {
    let r = PolyRing::new(FieldSpec::Prime(101), &["u", "x"], MonomialOrder::GrevLex).unwrap();
    let f = Polynomial::parse(&r, "u*x").unwrap();
    RingPresentation::new(&r, vec![f]).unwrap()
}

fn example_module(rp: &Arc<RingPresentation>) -> ModulePresentation {
    let iu = IdealData::new(&rp.ring, vec![Polynomial::parse(&rp.ring, "u").unwrap()]).unwrap();
    ModulePresentation::cyclic(rp, true, &iu)
}

fn codim_two_ring() -> Arc<RingPresentation> {
    let r = PolyRing::new(FieldSpec::Rationals, &["x", "y"], MonomialOrder::GrevLex).unwrap();
    let f = vec![
        Polynomial::parse(&r, "x^2").unwrap(),
        Polynomial::parse(&r, "y^2").unwrap(),
    ];
    RingPresentation::new(&r, f).unwrap()
}

fn residue_field(rp: &Arc<RingPresentation>) -> ModulePresentation {
    ModulePresentation::cyclic(rp, true, &IdealData::maximal(&rp.ring))
}

fn constant_table(
    rp: &Arc<RingPresentation>,
    m: &ModulePresentation,
    l: &ModulePresentation,
    i_max: usize,
    n_max: usize,
) -> ExtTable {
    let unit = IdealData::unit(&rp.ring);
    let fam = build_family(rp, &unit, l, FamilyKind::Constant, n_max).unwrap();
    family_ext_table(m, &fam, i_max).unwrap()
}

#[test]
fn criterion_01_example_reproduction() {
    let started = Instant::now();
    let rp = example_ring();
    let m = example_module(&rp);
    let table = constant_table(&rp, &m, &m, 12, 4);
    for n in 0..=4 {
        for i in 1..=6usize {
            let odd = table.cell(2 * i - 1, n);
            assert!(odd.is_zero(), "Ext^{} at n={n} should vanish", 2 * i - 1);
            let even = table.cell(2 * i, n);
            let len = even.presentation().hilbert_series().length();
            assert_eq!(
                len,
                Some(BigInt::from(1)),
                "dim_k Ext^{} at n={n}",
                2 * i
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}, budget 10s");
    println!("criterion 1 (example reproduction): pass ({elapsed:?})");
}

#[test]
fn criterion_02_eisenbud_identities() {
    let started = Instant::now();
    for rp in [example_ring(), codim_two_ring()] {
        let m = if rp.codim() == 1 {
            example_module(&rp)
        } else {
            residue_field(&rp)
        };
        let res = resolve(&m, 11).unwrap();
        let ops = eisenbud_operators(&res).unwrap();
        // dd = sum f_j t_j holds exactly over Q: re-derive the coefficients
        // by division with representation and match the stored operators
        for i in 2..=6usize {
            if res.betti(i) == 0 {
                continue;
            }
            for (g, col) in ops.lifts[i - 1].iter().enumerate() {
                let mut composite = elem_zero(&rp.ring, res.betti(i - 2));
                for (h, c) in ops.lifts[i - 2].iter().zip(col) {
                    composite = elem_add(&composite, &elem_mul_poly(h, c));
                }
                for (k, entry) in composite.iter().enumerate() {
                    let q = express_in_ideal(&rp.ring, &rp.regular_sequence, entry)
                        .unwrap()
                        .expect("composite lies in (f)");
                    let mut rebuilt = Polynomial::zero(&rp.ring);
                    for (fj, qj) in rp.regular_sequence.iter().zip(&q) {
                        rebuilt = rebuilt.add(&fj.mul(qj));
                    }
                    assert!(rebuilt.sub(entry).is_zero(), "exactness at i={i}");
                    for (j, qj) in q.iter().enumerate() {
                        let stored = &ops.ops[j][i - 2][g][k];
                        assert!(
                            rp.nf(&qj.sub(stored)).is_zero(),
                            "operator entry mismatch at i={i}"
                        );
                    }
                }
            }
        }
        let chain = verify_chain_map(&ops, 6);
        assert!(chain.ok(), "chain-map defects: {:?}", chain.defects);
        if rp.codim() >= 2 {
            let hom = verify_commute_homotopy(&ops, 0, 1, 6).unwrap();
            assert!(hom.solvable, "t1 t2 - t2 t1 must be null-homotopic");
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}, budget 30s");
    println!("criterion 2 (Eisenbud identities): pass ({elapsed:?})");
}

/// Brute-force syzygy oracle over A = Q[x,y]/(x^2,y^2) using dense rational
/// row reduction only; no Groebner machinery.
mod oracle {
    use num::BigRational;
    use num::traits::{One, Zero};

    type Q = BigRational;
    const DIM: usize = 4; // basis 1, x, y, xy

    fn basis_mul(a: usize, b: usize) -> Option<usize> {
        match (a, b) {
            (0, k) | (k, 0) => Some(k),
            (1, 2) | (2, 1) => Some(3),
            _ => None,
        }
    }

    /// Multiply a vector of A^r (coordinates grouped per generator) by the
    /// basis element e of A.
    fn mul_basis(v: &[Q], e: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); v.len()];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (g, eb) = (idx / DIM, idx % DIM);
            if let Some(t) = basis_mul(e, eb) {
                out[g * DIM + t] = &out[g * DIM + t] + c;
            }
        }
        out
    }

    fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = Q::one() / rows[r][c].clone();
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for c2 in 0..ncols {
                        let d = &rows[r][c2] * &f;
                        rows[i][c2] = &rows[i][c2] - &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.retain(|row| row.iter().any(|x| !x.is_zero()));
        pivots
    }

    fn in_span(span: &[Vec<Q>], pivots: &[usize], v: &[Q]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in span.iter().zip(pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for c in 0..v.len() {
                    let d = &row[c] * &f;
                    v[c] = &v[c] - &d;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    /// Betti numbers of k over A through homological degree `top`.
    pub fn betti_numbers(top: usize) -> Vec<usize> {
        let mut betti = vec![1usize];
        // kernel of A -> k is m, spanned by x, y, xy in A^1
        let mut kernel: Vec<Vec<Q>> = (1..DIM)
            .map(|e| {
                let mut v = vec![Q::zero(); DIM];
                v[e] = Q::one();
                v
            })
            .collect();
        let mut rank = 1usize;
        for _ in 1..=top {
            // minimal generators of the kernel: kernel basis modulo m * kernel
            let mut mk: Vec<Vec<Q>> = kernel
                .iter()
                .flat_map(|v| (1..DIM).map(|e| mul_basis(v, e)).collect::<Vec<_>>())
                .collect();
            let mk_pivots = rref(&mut mk);
            let mut span = mk.clone();
            let mut pivots = mk_pivots.clone();
            let mut gens: Vec<Vec<Q>> = Vec::new();
            for v in &kernel {
                if !in_span(&span, &pivots, v) {
                    gens.push(v.clone());
                    span.push(v.clone());
                    let extra = rref(&mut span);
                    pivots = extra;
                }
            }
            let mu = gens.len();
            betti.push(mu);
            // kernel of A^mu -> A^rank sending basis (s, e) to e * g_s
            let ncols = DIM * mu;
            let nrows = DIM * rank;
            let mut mat: Vec<Vec<Q>> = vec![vec![Q::zero(); ncols]; nrows];
            for (s, g) in gens.iter().enumerate() {
                for e in 0..DIM {
                    let img = mul_basis(g, e);
                    for (r, c) in img.into_iter().enumerate() {
                        mat[r][s * DIM + e] = c;
                    }
                }
            }
            let piv = rref(&mut mat);
            let mut next = Vec::new();
            for c in 0..ncols {
                if piv.contains(&c) {
                    continue;
                }
                let mut v = vec![Q::zero(); ncols];
                v[c] = Q::one();
                for (row, &p) in mat.iter().zip(&piv) {
                    v[p] = -row[c].clone();
                }
                next.push(v);
            }
            kernel = next;
            rank = mu;
        }
        betti
    }
}

#[test]
fn criterion_03_mu_growth_with_oracle() {
    // independent oracle first
    let betti = oracle::betti_numbers(8);
    for (n, &b) in betti.iter().enumerate() {
        assert_eq!(b, n + 1, "oracle betti at {n}");
    }
    // then the Ext pipeline on the same data
    let rp = codim_two_ring();
    let k = residue_field(&rp);
    let table = constant_table(&rp, &k, &k, 8, 0);
    for n in 0..=8usize {
        assert_eq!(table.cell(n, 0).mu, n + 1, "mu(Ext^{n}(k,k))");
    }
    // column T-generation bound: the Clifford class in degree 2 is a genuine
    // generator, so the detected bound is 2
    let gull = gulliksen_column_check(&table, 0).unwrap();
    assert_eq!(gull.generated_through, 2);
    println!("criterion 3 (mu growth, oracle first): pass");
}

#[test]
fn criterion_04_ass_stabilization() {
    let rp = example_ring();
    let m = example_module(&rp);
    let table = constant_table(&rp, &m, &m, 6, 4);
    let report = ass_stability_report(&table, &[]).unwrap();
    let m_key = IdealData::maximal(&rp.ring).canonical_strings(&rp);
    let u_key = IdealData::new(&rp.ring, vec![Polynomial::parse(&rp.ring, "u").unwrap()])
        .unwrap()
        .canonical_strings(&rp);
    for n in 0..=4usize {
        for i in 1..=6usize {
            let set = &report.per_cell[n][i];
            if i % 2 == 0 {
                assert_eq!(set.len(), 1, "even Ass at i={i} n={n}");
                assert!(set.contains(&m_key));
            } else {
                assert!(set.is_empty(), "odd Ass at i={i} n={n}");
            }
        }
    }
    assert!(report.odd_set.is_empty());
    assert_eq!(report.even_set.len(), 1);
    assert!(report.even_set.contains(&m_key));
    assert_eq!(report.union.len(), 2);
    assert!(report.union.contains(&m_key) && report.union.contains(&u_key));
    println!("criterion 4 (Ass stabilization): pass");
}

#[test]
fn criterion_05_squares_commute() {
    let rp = example_ring();
    let m = example_module(&rp);
    let a = ModulePresentation::ring_module(&rp, true);
    let ix = IdealData::new(&rp.ring, vec![Polynomial::parse(&rp.ring, "x").unwrap()]).unwrap();
    let table = constant_table(&rp, &m, &m, 8, 3);
    assert!(table.verify_commuting_squares().unwrap());
    let fam = build_family(&rp, &ix, &a, FamilyKind::IdealPower, 4).unwrap();
    let powers = family_ext_table(&m, &fam, 6).unwrap();
    assert!(powers.verify_commuting_squares().unwrap());
    println!("criterion 5 (u and t commute on every cell): pass");
}

#[test]
fn criterion_06_p_stable_injectivity() {
    let rp = example_ring();
    let m = example_module(&rp);
    let table = constant_table(&rp, &m, &m, 8, 3);
    let onset = p_stable_injectivity(&table).unwrap();
    assert!(onset.is_some(), "no injectivity onset on the example table");
    let rp2 = codim_two_ring();
    let k = residue_field(&rp2);
    let table2 = constant_table(&rp2, &k, &k, 6, 1);
    let onset2 = p_stable_injectivity(&table2).unwrap();
    assert!(onset2.is_some(), "no injectivity onset on the k table");
    println!("criterion 6 (P-stable injectivity from onset): pass");
}

#[test]
fn criterion_07_theta_bound() {
    // mu(I) = 1 over the example ring
    let rp = example_ring();
    let a = ModulePresentation::ring_module(&rp, true);
    let ix = IdealData::new(&rp.ring, vec![Polynomial::parse(&rp.ring, "x").unwrap()]).unwrap();
    let fam = build_family(&rp, &ix, &a, FamilyKind::IdealPower, 6).unwrap();
    let stable = stable_annihilator(&fam);
    assert!(stable.stabilized);
    let window = &fam.presentations[stable.onset..stable.onset + 4];
    let d = d_invariant(&rp, window, &stable.ann).unwrap();
    let th = theta(&d).unwrap();
    assert!(th <= 0, "theta {th} must be <= mu(I) - 1 = 0");
    // mu(I) = 2 over the regular ring Q[x, y]
    let r = PolyRing::new(FieldSpec::Rationals, &["x", "y"], MonomialOrder::GrevLex).unwrap();
    let q = RingPresentation::new(&r, Vec::new()).unwrap();
    let aq = ModulePresentation::ring_module(&q, true);
    let ixy = IdealData::maximal(&r);
    let fam2 = build_family(&q, &ixy, &aq, FamilyKind::IdealPower, 6).unwrap();
    let stable2 = stable_annihilator(&fam2);
    let window2 = &fam2.presentations[stable2.onset..stable2.onset + 5];
    let d2 = d_invariant(&q, window2, &stable2.ann).unwrap();
    let th2 = theta(&d2).unwrap();
    assert!(th2 <= 1, "theta {th2} must be <= mu(I) - 1 = 1");
    println!("criterion 7 (theta bound): pass");
}

#[test]
fn criterion_08_cx_stabilization() {
    let rp = example_ring();
    let m = example_module(&rp);
    let a = ModulePresentation::ring_module(&rp, true);
    let ix = IdealData::new(&rp.ring, vec![Polynomial::parse(&rp.ring, "x").unwrap()]).unwrap();
    let report = cx_stability_report(&m, &ix, &a, 6, 6).unwrap();
    let reference = &report.entries[1].ann_strings;
    for e in &report.entries[1..] {
        assert_eq!(e.cx, 1, "cx at j={}", e.j);
        assert_eq!(&e.ann_strings, reference, "annihilator GB at j={}", e.j);
    }
    for e in &report.entries {
        assert!(e.avb_ok, "vdim = cx at j={}", e.j);
    }
    println!("criterion 8 (cx stabilization): pass");
}

#[test]
fn criterion_09_generation_box() {
    let rp = codim_two_ring();
    let k = residue_field(&rp);
    let table = constant_table(&rp, &k, &k, 8, 1);
    let cert = certify_generation_box(&table, 5, 1).unwrap();
    assert_eq!(cert.status, BoxStatus::GeneratedInBox);
    assert!(
        cert.generators.iter().all(|&(i, n, _)| i <= 2 && n <= 1),
        "generators outside (i <= 2, n <= 1): {:?}",
        cert.generators
    );
    let larger = certify_generation_box(&table, 7, 1).unwrap();
    assert_eq!(larger.status, BoxStatus::GeneratedInBox);
    assert_eq!(
        larger.generators, cert.generators,
        "larger box must add no generators"
    );
    println!("criterion 9 (generation box certificate): pass");
}

#[test]
fn criterion_10_determinism_across_jobs() {
    use std::path::{Path, PathBuf};
    use std::process::Command;

    let bin = env!("CARGO_BIN_EXE_cihom");
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let base = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("determinism");
    let _ = std::fs::remove_dir_all(&base);
    let runs: &[(&str, &str)] = &[
        ("example_constant.toml", "ext-table"),
        ("example_constant.toml", "ass-table"),
        ("kk_codim2.toml", "certify-fg"),
        ("ideal_power_x.toml", "theta"),
        ("ideal_power_x.toml", "cx-table"),
    ];
    for (cfg, cmd) in runs {
        let tag = format!("{}_{cmd}", cfg.trim_end_matches(".toml"));
        let mut dirs = Vec::new();
        for jobs in ["1", "8"] {
            let out = base.join(format!("{tag}_j{jobs}"));
            let status = Command::new(bin)
                .args([
                    "--config",
                    configs.join(cfg).to_str().unwrap(),
                    "--out",
                    out.to_str().unwrap(),
                    "--jobs",
                    jobs,
                    cmd,
                ])
                .status()
                .unwrap();
            assert!(status.success(), "{tag} with --jobs {jobs} failed");
            dirs.push(out);
        }
        let mut names: Vec<String> = std::fs::read_dir(&dirs[0])
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        names.sort();
        assert!(!names.is_empty(), "{tag} produced no reports");
        for name in &names {
            let a = std::fs::read(dirs[0].join(name)).unwrap();
            let b = std::fs::read(dirs[1].join(name)).unwrap();
            assert_eq!(a, b, "{tag}: {name} differs between --jobs 1 and --jobs 8");
        }
    }
    println!("criterion 10 (byte-identical across --jobs 1 and 8): pass");
}
