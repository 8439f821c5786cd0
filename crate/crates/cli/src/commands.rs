//! Subcommand implementations. Each writes CSV/JSON/text reports into the
//! output directory and prints a one-screen summary; findings that falsify a
//! verified property are returned as `Finding` so the caller can exit 2.

use crate::config::Experiment;
use crate::report::{strings_value, Reporter};
use cihom_core::asymptotics::{
    analytic_spread, ass_stability_report, d_invariant, filter_regular_search,
    p_stable_injectivity, stable_annihilator, theta, PrimeIdeal,
};
use cihom_core::error::{Error, Result};
use cihom_core::ext::{build_family, certify_generation_box, family_ext_table, gulliksen_column_check, BoxStatus, ExtTable, ReesFamily};
use cihom_core::resolution::{format_differential, resolve};
use cihom_core::variety::{cx_stability_report, open_question_table, CxReport};
use num::BigInt;
use serde_json::{Map, Value};

pub enum Outcome {
    Ok,
    Finding(String),
}

fn family(exp: &Experiment) -> Result<ReesFamily> {
    build_family(
        &exp.rp,
        &exp.ideal,
        &exp.seed_module,
        exp.family_kind,
        exp.n_max,
    )
}

fn table(exp: &Experiment) -> Result<ExtTable> {
    let fam = family(exp)?;
    family_ext_table(&exp.m, &fam, exp.i_max)
}

fn prime_label(key: &[String]) -> String {
    format!("({})", key.join(" "))
}

fn user_candidates(exp: &Experiment) -> Result<Vec<PrimeIdeal>> {
    let mut out = Vec::new();
    for vars in &exp.candidate_primes {
        let idx: Result<Vec<usize>> = vars
            .iter()
            .map(|v| {
                exp.rp
                    .ring
                    .var_index(v)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{v}`")))
            })
            .collect();
        out.push(PrimeIdeal::from_vars(&exp.rp, &idx?)?);
    }
    Ok(out)
}

pub fn gb(exp: &Experiment, rep: &Reporter) -> Result<Outcome> {
    let ideal_strings = exp.ideal.canonical_strings(&exp.rp);
    let gb = exp.m.relations_gb();
    let rel_strings: Vec<String> = gb
        .elems
        .iter()
        .map(|e| {
            let entries: Vec<String> = e.iter().map(|p| p.to_string()).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    let mut body = Map::new();
    body.insert("ideal_gb".into(), strings_value(&ideal_strings));
    body.insert("module_relations_gb".into(), strings_value(&rel_strings));
    body.insert("ring_dim".into(), Value::from(exp.rp.hilbert_series().dim()));
    rep.json("gb.json", body)?;
    let mut lines = vec![format!("reduced GB of I in A ({} elements):", ideal_strings.len())];
    lines.extend(ideal_strings.iter().map(|s| format!("  {s}")));
    lines.push(format!(
        "GB of the relation module of M ({} elements):",
        rel_strings.len()
    ));
    lines.extend(rel_strings.iter().map(|s| format!("  {s}")));
    rep.text("gb.txt", &lines)?;
    println!("gb: {} ideal generators, {} module relations", ideal_strings.len(), rel_strings.len());
    Ok(Outcome::Ok)
}

pub fn resolve_cmd(exp: &Experiment, rep: &Reporter) -> Result<Outcome> {
    let res = resolve(&exp.m, exp.i_max)?;
    let mut rows = Vec::new();
    for i in 0..=res.length() {
        let shifts: Vec<String> = res.shifts[i].iter().map(|s| s.to_string()).collect();
        rows.push(vec![i.to_string(), res.betti(i).to_string(), shifts.join(" ")]);
    }
    rep.csv("resolution.csv", "i,betti,shifts", &rows)?;
    let mut lines = vec![format!("minimal free resolution to homological degree {}", res.length())];
    lines.push(format!("betti: {:?}", res.betti_numbers()));
    for i in 1..=res.length() {
        if res.betti(i) == 0 {
            break;
        }
        lines.push(format!("d_{i}:"));
        for row in format_differential(res.differential(i), res.betti(i - 1)) {
            lines.push(format!("  [{}]", row.join(", ")));
        }
    }
    let periodicity = (1..=4).find_map(|p| res.detect_periodicity(p).map(|(s, d)| (p, s, d)));
    if let Some((p, start, delta)) = periodicity {
        lines.push(format!(
            "eventually periodic: period {p} from level {start}, degree shift {delta}"
        ));
    }
    let mut body = Map::new();
    body.insert(
        "betti".into(),
        Value::Array(res.betti_numbers().iter().map(|&b| Value::from(b)).collect()),
    );
    body.insert(
        "periodicity".into(),
        match periodicity {
            Some((p, s, d)) => {
                let mut m = Map::new();
                m.insert("period".into(), Value::from(p));
                m.insert("start".into(), Value::from(s));
                m.insert("degree_shift".into(), Value::from(d));
                Value::Object(m)
            }
            None => Value::Null,
        },
    );
    rep.json("resolution.json", body)?;
    rep.text("resolution.txt", &lines)?;
    println!("resolve: betti {:?}", res.betti_numbers());
    Ok(Outcome::Ok)
}

pub fn ext_table(exp: &Experiment, rep: &Reporter) -> Result<Outcome> {
    let t = table(exp)?;
    let mut rows = Vec::new();
    for n in 0..=t.n_max {
        for i in 0..=t.i_max {
            let cell = t.cell(i, n);
            let len = cell
                .presentation()
                .hilbert_series()
                .length()
                .map(|l| l.to_string())
                .unwrap_or_else(|| "inf".into());
            let ann = cell.ann.canonical_strings(&exp.rp).join(" ");
            rows.push(vec![
                n.to_string(),
                i.to_string(),
                cell.mu.to_string(),
                len,
                ann,
            ]);
        }
    }
    rep.csv("ext_table.csv", "n,i,mu,length,ann", &rows)?;
    let squares_ok = t.verify_commuting_squares()?;
    let mut body = Map::new();
    body.insert("commuting_squares_ok".into(), Value::Bool(squares_ok));
    body.insert(
        "mu".into(),
        Value::Array(
            (0..=t.n_max)
                .map(|n| {
                    Value::Array(
                        (0..=t.i_max)
                            .map(|i| Value::from(t.cell(i, n).mu))
                            .collect(),
                    )
                })
                .collect(),
        ),
    );
    rep.json("ext_table.json", body)?;
    let mut lines = vec!["mu table (rows n, columns i):".to_string()];
    for n in 0..=t.n_max {
        let row: Vec<String> = (0..=t.i_max)
            .map(|i| t.cell(i, n).mu.to_string())
            .collect();
        lines.push(format!("  n={n}: {}", row.join(" ")));
    }
    lines.push(format!("u,t squares commute on every cell: {squares_ok}"));
    rep.text("ext_table.txt", &lines)?;
    println!("ext-table: {} cells, squares commute: {squares_ok}", rows.len());
    if !squares_ok {
        return Ok(Outcome::Finding("u and t actions fail to commute".into()));
    }
    Ok(Outcome::Ok)
}

pub fn certify_fg(exp: &Experiment, rep: &Reporter) -> Result<Outcome> {
    let t = table(exp)?;
    let (i_box, n_box) = exp.gen_box.unwrap_or((
        exp.i_max.saturating_sub(2),
        exp.n_max.saturating_sub(1),
    ));
    let cert = certify_generation_box(&t, i_box, n_box)?;
    let gull: Result<Vec<_>> = (0..=t.n_max)
        .map(|n| gulliksen_column_check(&t, n))
        .collect();
    let gull = gull?;
    let status = match cert.status {
        BoxStatus::GeneratedInBox => "generated-in-box",
        BoxStatus::Inconclusive => "inconclusive",
    };
    let mut body = Map::new();
    body.insert("status".into(), Value::String(status.into()));
    body.insert("i_box".into(), Value::from(cert.i_box));
    body.insert("n_box".into(), Value::from(cert.n_box));
    body.insert(
        "generators".into(),
        Value::Array(
            cert.generators
                .iter()
                .map(|&(i, n, s)| Value::Array(vec![i.into(), n.into(), s.into()]))
                .collect(),
        ),
    );
    body.insert(
        "t_generated_through".into(),
        Value::Array(
            gull.iter()
                .map(|g| Value::from(g.generated_through))
                .collect(),
        ),
    );
    rep.json("certify_fg.json", body)?;
    let mut lines = vec![format!(
        "generation box (i <= {i_box}, n <= {n_box}): {status}, {} generators",
        cert.generators.len()
    )];
    for &(i, n, s) in &cert.generators {
        lines.push(format!("  generator at i={i} n={n} (cell index {s})"));
    }
    for (n, g) in gull.iter().enumerate() {
        lines.push(format!(
            "  column n={n}: T-generated through i={}",
            g.generated_through
        ));
    }
    rep.text("certify_fg.txt", &lines)?;
    println!(
        "certify-fg: {status}, {} generators in box (i <= {i_box}, n <= {n_box})",
        cert.generators.len()
    );
    if matches!(cert.status, BoxStatus::Inconclusive) {
        return Ok(Outcome::Finding("generation not certified inside the box".into()));
    }
    Ok(Outcome::Ok)
}

pub fn ass_table(exp: &Experiment, rep: &Reporter) -> Result<Outcome> {
    let t = table(exp)?;
    let candidates = user_candidates(exp)?;
    let report = ass_stability_report(&t, &candidates)?;
    let injectivity = p_stable_injectivity(&t)?;
    let mut rows = Vec::new();
    for (n, row) in report.per_cell.iter().enumerate() {
        for (i, set) in row.iter().enumerate() {
            let label: Vec<String> = set.iter().map(|k| prime_label(k)).collect();
            rows.push(vec![n.to_string(), i.to_string(), label.join(" ")]);
        }
    }
    rep.csv("ass_table.csv", "n,i,ass", &rows)?;
    let setv = |s: &std::collections::BTreeSet<Vec<String>>| {
        Value::Array(s.iter().map(|k| Value::String(prime_label(k))).collect())
    };
    let mut body = Map::new();
    body.insert(
        "onset".into(),
        match report.onset {
            Some((i0, n0)) => Value::Array(vec![i0.into(), n0.into()]),
            None => Value::Null,
        },
    );
    body.insert("even_set".into(), setv(&report.even_set));
    body.insert("odd_set".into(), setv(&report.odd_set));
    body.insert("union".into(), setv(&report.union));
    body.insert(
        "p_stable_injectivity_onset".into(),
        match injectivity {
            Some((i0, n0)) => Value::Array(vec![i0.into(), n0.into()]),
            None => Value::Null,
        },
    );
    rep.json("ass_table.json", body)?;
    let fmt_set = |s: &std::collections::BTreeSet<Vec<String>>| {
        let v: Vec<String> = s.iter().map(|k| prime_label(k)).collect();
        if v.is_empty() {
            "{}".to_string()
        } else {
            format!("{{{}}}", v.join(", "))
        }
    };
    let lines = vec![
        format!("stabilization onset: {:?}", report.onset),
        format!("stable even set: {}", fmt_set(&report.even_set)),
        format!("stable odd set: {}", fmt_set(&report.odd_set)),
        format!("union over the table: {}", fmt_set(&report.union)),
        format!("P-stable injectivity onset: {injectivity:?}"),
    ];
    rep.text("ass_table.txt", &lines)?;
    println!(
        "ass-table: onset {:?}, even {}, odd {}",
        report.onset,
        report.even_set.len(),
        report.odd_set.len()
    );
    Ok(Outcome::Ok)
}

pub fn theta_cmd(exp: &Experiment, rep: &Reporter) -> Result<Outcome> {
    let fam = family(exp)?;
    let stable = stable_annihilator(&fam);
    let spread = analytic_spread(&fam)?;
    let pieces: Vec<_> = fam.presentations[stable.onset..].to_vec();
    let d_vals: Vec<BigInt> = d_invariant(&exp.rp, &pieces, &stable.ann)?;
    let th = theta(&d_vals)?;
    let mu_i = fam.mu_ideal();
    let bound = mu_i as i64 - 1;
    let fr = filter_regular_search(&fam, mu_i.max(1), 8, stable.onset, exp.seed);
    let mut body = Map::new();
    body.insert(
        "stable_annihilator".into(),
        strings_value(&stable.ann.canonical_strings(&exp.rp)),
    );
    body.insert("stabilized".into(), Value::Bool(stable.stabilized));
    body.insert("onset".into(), Value::from(stable.onset));
    body.insert(
        "d_values".into(),
        Value::Array(d_vals.iter().map(|v| Value::String(v.to_string())).collect()),
    );
    body.insert("theta".into(), Value::from(th));
    body.insert("mu_ideal".into(), Value::from(mu_i));
    body.insert("bound".into(), Value::from(bound));
    body.insert("within_bound".into(), Value::Bool(th <= bound));
    body.insert("analytic_spread".into(), Value::from(spread));
    body.insert(
        "filter_regular".into(),
        match &fr {
            Ok(f) => Value::String(f.element.to_string()),
            Err(_) => Value::Null,
        },
    );
    rep.json("theta.json", body)?;
    let lines = vec![
        format!(
            "stable annihilator ({}stabilized, onset {}): {:?}",
            if stable.stabilized { "" } else { "NOT " },
            stable.onset,
            stable.ann.canonical_strings(&exp.rp)
        ),
        format!("d values along the window: {d_vals:?}"),
        format!("theta (fitted degree): {th}, bound mu(I) - 1 = {bound}"),
        format!("analytic spread: {spread}"),
        match &fr {
            Ok(f) => format!(
                "filter-regular element of Rees degree {}: {} (verified n in {}..={})",
                f.rees_degree, f.element, f.verified_from, f.verified_to
            ),
            Err(e) => format!("no filter-regular element found: {e}"),
        },
    ];
    rep.text("theta.txt", &lines)?;
    println!("theta: {th} (bound {bound}), spread {spread}");
    if th > bound {
        return Ok(Outcome::Finding(format!("theta {th} exceeds the bound {bound}")));
    }
    Ok(Outcome::Ok)
}

fn cx_outputs(exp: &Experiment, rep: &Reporter, report: &CxReport, prefix: &str) -> Result<()> {
    let mut rows = Vec::new();
    for e in &report.entries {
        rows.push(vec![
            e.j.to_string(),
            e.cx.to_string(),
            e.vdim.to_string(),
            e.ann_strings.join(" "),
            e.mu_sequence
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            e.avb_ok.to_string(),
        ]);
    }
    rep.csv(
        &format!("{prefix}.csv"),
        "j,cx,vdim,ann,mu_sequence,vdim_equals_cx",
        &rows,
    )?;
    let mut body = Map::new();
    body.insert(
        "onset".into(),
        report.onset.map(Value::from).unwrap_or(Value::Null),
    );
    body.insert("exploratory".into(), Value::Bool(report.exploratory));
    body.insert(
        "entries".into(),
        Value::Array(
            report
                .entries
                .iter()
                .map(|e| {
                    let mut m = Map::new();
                    m.insert("j".into(), Value::from(e.j));
                    m.insert("cx".into(), Value::from(e.cx));
                    m.insert("vdim".into(), Value::from(e.vdim));
                    m.insert("ann".into(), strings_value(&e.ann_strings));
                    m.insert("vdim_equals_cx".into(), Value::Bool(e.avb_ok));
                    Value::Object(m)
                })
                .collect(),
        ),
    );
    rep.json(&format!("{prefix}.json"), body)?;
    let mut lines = Vec::new();
    if report.exploratory {
        lines.push("EXPLORATORY: quotient families carry no stabilization theorem; evidence only".into());
    }
    for e in &report.entries {
        lines.push(format!(
            "j={}: cx={} vdim={} ann={:?}",
            e.j, e.cx, e.vdim, e.ann_strings
        ));
    }
    lines.push(format!("annihilator stabilization onset: {:?}", report.onset));
    rep.text(&format!("{prefix}.txt"), &lines)?;
    let _ = exp;
    Ok(())
}

pub fn cx_table(exp: &Experiment, rep: &Reporter) -> Result<Outcome> {
    let report = cx_stability_report(&exp.m, &exp.ideal, &exp.seed_module, exp.n_max, exp.i_max)?;
    cx_outputs(exp, rep, &report, "cx_table")?;
    let stable_cx = report.entries.last().map(|e| e.cx);
    println!(
        "cx-table: stable cx {:?}, onset {:?}",
        stable_cx, report.onset
    );
    if report.entries.iter().any(|e| !e.avb_ok) {
        return Ok(Outcome::Finding("variety dimension disagrees with complexity".into()));
    }
    Ok(Outcome::Ok)
}

pub fn explore_quotient(exp: &Experiment, rep: &Reporter) -> Result<Outcome> {
    let report = open_question_table(&exp.m, &exp.ideal, &exp.seed_module, exp.n_max, exp.i_max)?;
    cx_outputs(exp, rep, &report, "explore_quotient")?;
    println!(
        "explore-quotient: {} rows (exploratory)",
        report.entries.len()
    );
    Ok(Outcome::Ok)
}
