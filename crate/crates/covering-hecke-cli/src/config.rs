//! Job configuration: TOML schema and validation into core-crate objects.

use serde::Deserialize;

use covering_hecke::cover_torus::GenuineCharacter;
use covering_hecke::quad_cover::{minimal_invariant_d, QuadraticCoverData};
use covering_hecke::root_datum::RootDatum;
use covering_hecke::tame_arith::TameField;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// Preset tag ("SL", "PGL", "GL", "Sp", "SO", "G2") with `param`,
    /// or omit and give an explicit `[datum]` table.
    pub group: Option<String>,
    pub param: Option<usize>,
    pub datum: Option<DatumConfig>,
    /// Cover degree.
    pub n: i64,
    /// Residue characteristic and residue degree.
    pub p: i64,
    #[serde(default = "one_u32")]
    pub f: u32,
    /// Exponent of the chosen faithful character of mu_n, coprime to n.
    pub eps_exp: Option<i64>,
    /// Bilinear form; defaults to the minimal Weyl-invariant one.
    pub d_matrix: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tasks")]
    pub tasks: Vec<String>,
    #[serde(default)]
    pub bounds: Bounds,
    pub characters: Vec<CharacterConfig>,
}

fn one_u32() -> u32 {
    1
}

fn default_tasks() -> Vec<String> {
    vec![
        "chi-report".into(),
        "hecke-check".into(),
        "shimura-check".into(),
    ]
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumConfig {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple_indices: Vec<usize>,
    pub pairing: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterConfig {
    /// Exponent vector mod q-1 on the coordinate cocharacters.
    pub m: Vec<i64>,
    /// Optional positive-depth data: root index -> depth (rejected for now
    /// by the depth-zero machinery, but validated here).
    pub depth: Option<std::collections::BTreeMap<usize, i64>>,
}

#[derive(Debug, Deserialize, Clone, Copy)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    /// Word-length cap for sampled relation checks.
    pub length: u32,
    /// Offset cap for wall enumeration and drawing.
    pub offset: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            length: 4,
            offset: 3,
        }
    }
}

/// Validated job: every core object constructed and cross-checked.
#[derive(Debug)]
pub struct Job {
    pub cover: QuadraticCoverData,
    pub field: TameField,
    pub characters: Vec<GenuineCharacter>,
    pub seed: u64,
    pub tasks: Vec<String>,
    pub bounds: Bounds,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid config: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

const TASKS: &[&str] = &["chi-report", "hecke-check", "shimura-check", "apartment-svg"];

pub fn load(path: &std::path::Path) -> Result<(JobConfig, Job), ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    let cfg: JobConfig =
        toml::from_str(&text).map_err(|e| ConfigError(format!("field error: {e}")))?;
    let job = validate(&cfg)?;
    Ok((cfg, job))
}

pub fn validate(cfg: &JobConfig) -> Result<Job, ConfigError> {
    for t in &cfg.tasks {
        if !TASKS.contains(&t.as_str()) {
            return Err(ConfigError(format!(
                "tasks: unknown task {t:?}; expected one of {TASKS:?}"
            )));
        }
    }
    let datum = match (&cfg.group, &cfg.datum) {
        (Some(g), None) => {
            let param = cfg.param.ok_or_else(|| {
                ConfigError("param: required when group preset is used".into())
            })?;
            RootDatum::preset(g, param)
                .map_err(|e| ConfigError(format!("group/param: {e:?}")))?
        }
        (None, Some(d)) => RootDatum::new(
            d.rank,
            d.roots.clone(),
            d.coroots.clone(),
            d.simple_indices.clone(),
            d.pairing.clone(),
        )
        .map_err(|e| ConfigError(format!("datum: {e:?}")))?,
        _ => {
            return Err(ConfigError(
                "group/datum: give exactly one of a preset or an explicit datum".into(),
            ))
        }
    };
    let d = cfg
        .d_matrix
        .clone()
        .unwrap_or_else(|| minimal_invariant_d(&datum));
    let cover = QuadraticCoverData::new(datum, d, cfg.n)
        .map_err(|e| ConfigError(format!("d_matrix/n: {e}")))?;
    let field = match cfg.eps_exp {
        Some(e) => TameField::with_embedding(cfg.p, cfg.f, cfg.n, e),
        None => TameField::new(cfg.p, cfg.f, cfg.n),
    }
    .map_err(|e| ConfigError(format!("p/f/n: {e}")))?;
    if cfg.characters.is_empty() {
        return Err(ConfigError("characters: at least one required".into()));
    }
    let rank = cover.datum().rank();
    let mut characters = Vec::with_capacity(cfg.characters.len());
    for (i, c) in cfg.characters.iter().enumerate() {
        if c.m.len() != rank {
            return Err(ConfigError(format!(
                "characters[{i}].m: expected length {rank}, got {}",
                c.m.len()
            )));
        }
        let chi = match &c.depth {
            None => GenuineCharacter::depth_zero(&field, c.m.clone()),
            Some(depth) => GenuineCharacter::with_depth(&field, c.m.clone(), depth.clone())
                .map_err(|e| ConfigError(format!("characters[{i}].depth: {e}")))?,
        };
        characters.push(chi);
    }
    Ok(Job {
        cover,
        field,
        characters,
        seed: cfg.seed,
        tasks: cfg.tasks.clone(),
        bounds: cfg.bounds,
    })
}
