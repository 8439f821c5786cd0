//! TOML experiment configuration: field, ring presentation, modules, ideal,
//! family kind, and bounds. The raw bytes are hashed so every report can
//! state exactly which configuration produced it.

use cihom_core::error::{Error, Result};
use cihom_core::ext::FamilyKind;
use cihom_core::field::FieldSpec;
use cihom_core::free::FreeElem;
use cihom_core::ideal::IdealData;
use cihom_core::modules::ModulePresentation;
use cihom_core::poly::{MonomialOrder, PolyRing, Polynomial};
use cihom_core::ring::RingPresentation;
use serde::Deserialize;
use sha2::{Digest, Sha256};
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default)]
    pub regular_sequence: Vec<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    pub module_m: ModuleSpec,
    #[serde(default)]
    pub ideal: Option<IdealSpec>,
    #[serde(default)]
    pub seed_module: Option<ModuleSpec>,
    #[serde(default)]
    pub family: Option<FamilySpec>,
    pub bounds: BoundsSpec,
    #[serde(default, rename = "box")]
    pub gen_box: Option<BoxSpec>,
    #[serde(default)]
    pub candidate_primes: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub rank: usize,
    #[serde(default)]
    pub shifts: Option<Vec<i64>>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub generators: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub kind: String,
    #[serde(default)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSpec {
    pub i_max: usize,
    #[serde(default)]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub deg_cap: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSpec {
    pub i_box: usize,
    pub n_box: usize,
}

/// Fully built experiment: core objects plus the bounds and hash every
/// report embeds.
pub struct Experiment {
    pub rp: Arc<RingPresentation>,
    pub m: ModulePresentation,
    pub ideal: IdealData,
    pub seed_module: ModulePresentation,
    pub family_kind: FamilyKind,
    pub i_max: usize,
    pub n_max: usize,
    pub deg_cap: usize,
    pub seed: u64,
    pub gen_box: Option<(usize, usize)>,
    pub candidate_primes: Vec<Vec<String>>,
    pub config_hash: String,
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    if s == "Q" || s.eq_ignore_ascii_case("rationals") {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = s.strip_prefix('F').or_else(|| s.strip_prefix('f')) {
        let p: u32 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad field spec `{s}`")))?;
        let spec = FieldSpec::Prime(p);
        spec.validate()?;
        return Ok(spec);
    }
    Err(Error::Parse(format!(
        "field must be `Q` or `F<p>`, got `{s}`"
    )))
}

fn parse_module(
    rp: &Arc<RingPresentation>,
    spec: &ModuleSpec,
    what: &str,
) -> Result<ModulePresentation> {
    let shifts = spec.shifts.clone().unwrap_or_else(|| vec![0; spec.rank]);
    if shifts.len() != spec.rank {
        return Err(Error::Parse(format!(
            "{what}: shifts length {} does not match rank {}",
            shifts.len(),
            spec.rank
        )));
    }
    let mut rels: Vec<FreeElem> = Vec::new();
    for row in &spec.relations {
        if row.len() != spec.rank {
            return Err(Error::Parse(format!(
                "{what}: relation has {} entries, rank is {}",
                row.len(),
                spec.rank
            )));
        }
        let rel: Result<FreeElem> = row
            .iter()
            .map(|s| Polynomial::parse(&rp.ring, s))
            .collect();
        rels.push(rel?);
    }
    ModulePresentation::new(rp, true, shifts, rels)
}

pub fn load(path: &Path, overrides: &Overrides) -> Result<Experiment> {
    let raw = std::fs::read(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    hasher.update(&raw);
    let config_hash = format!("{:x}", hasher.finalize());

    let text = String::from_utf8(raw).map_err(|_| Error::Parse("config is not UTF-8".into()))?;
    let cfg: ConfigFile =
        toml::from_str(&text).map_err(|e| Error::Parse(format!("config: {e}")))?;

    let field = parse_field(&cfg.field)?;
    let refs: Vec<&str> = cfg.vars.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::new(field, &refs, MonomialOrder::GrevLex)?;
    let f: Result<Vec<Polynomial>> = cfg
        .regular_sequence
        .iter()
        .map(|s| Polynomial::parse(&ring, s))
        .collect();
    let rp = RingPresentation::new(&ring, f?)?;
    if !rp.is_regular_sequence() {
        return Err(Error::NotRegularSequence(
            "Hilbert series of Q/(f) differs from the Koszul prediction".into(),
        ));
    }

    let m = parse_module(&rp, &cfg.module_m, "module_m")?;
    if !m.is_homogeneous() {
        return Err(Error::Inhomogeneous("module_m relations".into()));
    }
    let ideal = match &cfg.ideal {
        Some(spec) => {
            let gens: Result<Vec<Polynomial>> = spec
                .generators
                .iter()
                .map(|s| Polynomial::parse(&ring, s))
                .collect();
            IdealData::new(&ring, gens?)?
        }
        None => IdealData::unit(&ring),
    };
    let seed_module = match &cfg.seed_module {
        Some(spec) => parse_module(&rp, spec, "seed_module")?,
        None => ModulePresentation::ring_module(&rp, true),
    };
    let family_kind = match cfg.family.as_ref().map(|f| f.kind.as_str()) {
        None | Some("constant") => FamilyKind::Constant,
        Some("ideal-power") => FamilyKind::IdealPower,
        Some("quotient") => FamilyKind::QuotientFamily,
        Some(other) => {
            return Err(Error::Parse(format!(
                "family.kind must be constant, ideal-power, or quotient, got `{other}`"
            )))
        }
    };
    let n_max = overrides
        .n_max
        .or(cfg.bounds.n_max)
        .or(cfg.family.as_ref().and_then(|f| f.n_max))
        .unwrap_or(0);
    Ok(Experiment {
        rp,
        m,
        ideal,
        seed_module,
        family_kind,
        i_max: overrides.i_max.unwrap_or(cfg.bounds.i_max),
        n_max,
        deg_cap: overrides.deg_cap.or(cfg.bounds.deg_cap).unwrap_or(0),
        seed: overrides.seed.or(cfg.seed).unwrap_or(0),
        gen_box: cfg.gen_box.as_ref().map(|b| (b.i_box, b.n_box)),
        candidate_primes: cfg.candidate_primes,
        config_hash,
    })
}

#[derive(Default)]
pub struct Overrides {
    pub i_max: Option<usize>,
    pub n_max: Option<usize>,
    pub deg_cap: Option<usize>,
    pub seed: Option<u64>,
}
