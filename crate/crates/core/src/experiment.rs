//! Config-driven experiment pipeline: instances, exact ground truths, repeated
//! annealing runs, and the CSV/JSON outputs derived from them.
//!
//! All randomness is addressed by the master seed, and every output is sorted
//! canonically before it is written, so a rerun with the same config produces
//! the same bytes whatever the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chimera::{build_chimera, read_mask, ChimeraSpec};
use crate::error::{Error, Result};
use crate::exact::{brute_force_ground, chimera_dp_ground, GroundTruth, BRUTE_FORCE_LIMIT};
use crate::instance::{energy, gen_instance, read_instance, write_instance, Instance};
use crate::o2::AnnealParamsO2;
use crate::o3::AnnealParamsO3;
use crate::rng::{self, Purpose};
use crate::sa::SaSchedule;
use crate::solver::{O2Annealer, O3Annealer, SaAnnealer, Solver, SolverKind};
use crate::stats::{
    self, correlate, histogram, histogram_to_csv, records_from_csv, records_to_csv,
    scatter_to_csv, BimodalityCriterion, BimodalityReport, SuccessRecord,
};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const RECORDS_FILE: &str = "records.csv";
pub const CORRELATIONS_FILE: &str = "correlations.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChimeraSection {
    pub rows: usize,
    pub cols: usize,
    #[serde(default = "default_shore")]
    pub shore: usize,
    /// disabled vertex indices
    #[serde(default)]
    pub mask: BTreeSet<usize>,
    /// file with more disabled vertices, merged into `mask`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mask_file: Option<PathBuf>,
}

fn default_shore() -> usize {
    4
}

impl ChimeraSection {
    pub fn to_spec(&self) -> Result<ChimeraSpec> {
        let mut mask = self.mask.clone();
        if let Some(path) = &self.mask_file {
            mask.extend(read_mask(path)?);
        }
        let spec = ChimeraSpec::new(self.rows, self.cols, self.shore).with_mask(mask);
        spec.validate()?;
        Ok(spec)
    }
}

/// Everything that determines an experiment's outputs.
///
/// Text form is TOML: top-level keys plus `[chimera]`, `[o3]`, `[o2]`, `[sa]`
/// and `[bimodality]` sections. Unknown keys are errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub instances: usize,
    pub master_seed: u64,
    pub repetitions: u64,
    pub output_dir: PathBuf,
    pub solvers: Vec<SolverKind>,
    #[serde(default = "default_bins")]
    pub bins: usize,
    /// number of instances (N <= 30 only) whose DP ground truth is re-derived by brute force
    #[serde(default = "default_brute_force_checks")]
    pub brute_force_checks: usize,
    /// read instances from `*.txt` files here instead of generating them
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance_dir: Option<PathBuf>,
    /// ground-truth cache; defaults to `<output_dir>/ground_cache`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
    pub chimera: ChimeraSection,
    #[serde(default)]
    pub o3: AnnealParamsO3,
    #[serde(default)]
    pub o2: AnnealParamsO2,
    #[serde(default)]
    pub sa: SaSchedule,
    #[serde(default)]
    pub bimodality: BimodalityCriterion,
}

fn default_bins() -> usize {
    20
}

fn default_brute_force_checks() -> usize {
    3
}

const TOP_KEYS: &[&str] = &[
    "instances",
    "master_seed",
    "repetitions",
    "output_dir",
    "solvers",
    "bins",
    "brute_force_checks",
    "instance_dir",
    "cache_dir",
    "chimera",
    "o3",
    "o2",
    "sa",
    "bimodality",
];

const SECTION_KEYS: &[(&str, &[&str])] = &[
    ("chimera", &["rows", "cols", "shore", "mask", "mask_file"]),
    ("o3", &["h", "t_f", "dt", "alpha", "kappa"]),
    ("o2", &["h", "t_f", "dt", "gamma", "kappa"]),
    ("sa", &["beta_start", "beta_end", "sweeps"]),
    ("bimodality", &["low_max", "mid_lo", "mid_hi", "high_min", "ratio"]),
];

impl ExperimentConfig {
    pub fn new(
        spec: &ChimeraSpec,
        instances: usize,
        repetitions: u64,
        solvers: Vec<SolverKind>,
        output_dir: impl Into<PathBuf>,
    ) -> Self {
        ExperimentConfig {
            instances,
            master_seed: 0,
            repetitions,
            output_dir: output_dir.into(),
            solvers,
            bins: default_bins(),
            brute_force_checks: default_brute_force_checks(),
            instance_dir: None,
            cache_dir: None,
            chimera: ChimeraSection {
                rows: spec.rows,
                cols: spec.cols,
                shore: spec.shore,
                mask: spec.mask.clone(),
                mask_file: None,
            },
            o3: AnnealParamsO3::default(),
            o2: AnnealParamsO2::default(),
            sa: SaSchedule::default(),
            bimodality: BimodalityCriterion::default(),
        }
    }

    /// Parse TOML text. Relative paths are resolved against `base_dir`.
    pub fn from_toml_str(text: &str, base_dir: &Path) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        check_keys(&table)?;
        let mut config: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base_dir.join(&*p);
            }
        };
        resolve(&mut config.output_dir);
        config.instance_dir.as_mut().map(resolve);
        config.cache_dir.as_mut().map(resolve);
        config.chimera.mask_file.as_mut().map(resolve);
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml_str(&text, base)
    }

    /// Check every field; errors name the offending key as `section.key`.
    pub fn validate(&self) -> Result<()> {
        let field = |path: &str, reason: &str| Error::Config(format!("{path}: {reason}"));
        if self.instances == 0 && self.instance_dir.is_none() {
            return Err(field("instances", "must be >= 1"));
        }
        if self.repetitions == 0 {
            return Err(field("repetitions", "must be >= 1"));
        }
        if self.bins < 2 {
            return Err(field("bins", "must be >= 2"));
        }
        if self.solvers.is_empty() {
            return Err(field("solvers", "select at least one solver"));
        }
        if self.solvers.contains(&SolverKind::External) {
            return Err(field("solvers", "External records come from `import`, not from a run"));
        }
        let unique: BTreeSet<_> = self.solvers.iter().collect();
        if unique.len() != self.solvers.len() {
            return Err(field("solvers", "duplicate entry"));
        }
        self.chimera
            .to_spec()
            .map_err(|e| Error::Config(format!("chimera: {e}")))?;
        let section = |name: &str, r: Result<()>| {
            r.map_err(|e| match e {
                Error::InvalidParam { name: key, reason } => field(&format!("{name}.{key}"), &reason),
                other => Error::Config(format!("{name}: {other}")),
            })
        };
        section("o3", self.o3.validate())?;
        section("o2", self.o2.validate())?;
        section("sa", self.sa.validate())?;
        let b = &self.bimodality;
        let ordered = 0.0 <= b.low_max && b.low_max <= b.mid_lo && b.mid_lo < b.mid_hi;
        if !(ordered && b.mid_hi <= b.high_min && b.high_min <= 1.0 && b.ratio > 0.0) {
            return Err(field(
                "bimodality",
                "need 0 <= low_max <= mid_lo < mid_hi <= high_min <= 1 and ratio > 0",
            ));
        }
        Ok(())
    }

    pub fn cache_dir(&self) -> PathBuf {
        self.cache_dir
            .clone()
            .unwrap_or_else(|| self.output_dir.join("ground_cache"))
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes to toml")
    }
}

fn check_keys(table: &toml::Table) -> Result<()> {
    for (key, value) in table {
        if !TOP_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!("{key}: unknown key")));
        }
        if let Some((_, allowed)) = SECTION_KEYS.iter().find(|(s, _)| *s == key) {
            let Some(section) = value.as_table() else {
                return Err(Error::Config(format!("{key}: expected a [{key}] section")));
            };
            if let Some(bad) = section.keys().find(|k| !allowed.contains(&k.as_str())) {
                return Err(Error::Config(format!("{key}.{bad}: unknown key")));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceEntry {
    pub id: String,
    /// relative to the output directory when the file lives inside it
    pub path: PathBuf,
    pub content_hash: String,
    pub ground: GroundTruth,
    pub brute_force_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramEntry {
    pub solver: SolverKind,
    pub path: PathBuf,
    pub counts: Vec<u64>,
    pub bimodality: BimodalityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationEntry {
    pub x: SolverKind,
    pub y: SolverKind,
    pub pearson_r: f64,
    pub spearman_rho: f64,
    pub degenerate: bool,
    pub n: usize,
    pub scatter_path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub version: String,
    pub config: ExperimentConfig,
    pub instances: Vec<InstanceEntry>,
    pub records: Vec<SuccessRecord>,
    pub histograms: Vec<HistogramEntry>,
    pub correlations: Vec<CorrelationEntry>,
}

impl ExperimentManifest {
    /// Every record must refer to an instance with a ground truth.
    pub fn check_integrity(&self) -> Result<()> {
        let known: BTreeSet<&str> = self.instances.iter().map(|e| e.id.as_str()).collect();
        match self.records.iter().find(|r| !known.contains(r.instance_id.as_str())) {
            Some(r) => Err(Error::UnknownInstance(r.instance_id.clone())),
            None => Ok(()),
        }
    }

    pub fn records_for(&self, solver: SolverKind) -> Vec<SuccessRecord> {
        self.records
            .iter()
            .filter(|r| r.solver == solver)
            .cloned()
            .collect()
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Hex SHA-256 of the coupling structure (vertex count, inactive set, signed edges).
pub fn content_hash(instance: &Instance) -> String {
    let graph = instance.graph();
    let mut canon = format!("{}\n", instance.n_vertices());
    for v in (0..instance.n_vertices()).filter(|&v| !graph.is_active(v)) {
        write!(canon, "x {v}\n").unwrap();
    }
    for (i, j, c) in instance.weighted_edges() {
        writeln!(canon, "{i} {j} {c}").unwrap();
    }
    Sha256::digest(canon.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Ground truth from the on-disk cache, or computed by the chimera DP and stored.
pub fn cached_ground(instance: &Instance, spec: &ChimeraSpec, cache_dir: &Path) -> Result<GroundTruth> {
    let path = cache_dir.join(format!("{}.json", content_hash(instance)));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(ground) = serde_json::from_str::<GroundTruth>(&text) {
            // a stale or corrupt entry is recomputed, never trusted
            if stats::check_ground(instance, &ground).is_ok() && ground.witness.len() == instance.n_vertices() {
                return Ok(ground);
            }
        }
    }
    let ground = chimera_dp_ground(instance, spec)?;
    std::fs::create_dir_all(cache_dir).map_err(|e| Error::io(cache_dir, e))?;
    write_file(&path, &serde_json::to_string_pretty(&ground)?)?;
    Ok(ground)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn relative_to(path: &Path, base: &Path) -> PathBuf {
    path.strip_prefix(base).map(Path::to_path_buf).unwrap_or_else(|_| path.to_path_buf())
}

fn make_solver(config: &ExperimentConfig, kind: SolverKind) -> Box<dyn Solver> {
    match kind {
        SolverKind::O3 => Box::new(O3Annealer::new(config.o3)),
        SolverKind::O2 => Box::new(O2Annealer::new(config.o2)),
        SolverKind::SA => Box::new(SaAnnealer::new(config.sa)),
        SolverKind::External => unreachable!("rejected by validation"),
    }
}

/// Generated instances, or the `*.txt` files of `instance_dir` in file-name order.
fn load_instances(config: &ExperimentConfig, spec: &ChimeraSpec) -> Result<Vec<(Instance, Option<PathBuf>)>> {
    if let Some(dir) = &config.instance_dir {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| Error::io(dir, e))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        files.sort();
        if files.is_empty() {
            return Err(Error::Config(format!("instance_dir: no *.txt files in {}", dir.display())));
        }
        let mut ids = BTreeSet::new();
        let mut out = Vec::new();
        for f in files {
            let inst = read_instance(&f)?;
            if !ids.insert(inst.id.clone()) {
                return Err(Error::Config(format!("instance_dir: duplicate instance id `{}`", inst.id)));
            }
            out.push((inst, Some(f)));
        }
        return Ok(out);
    }
    let graph = build_chimera(spec)?;
    let width = (config.instances - 1).to_string().len().max(4);
    Ok((0..config.instances)
        .map(|k| {
            let seed = rng::derive_seed(config.master_seed, Purpose::InstanceSeed, k as u64);
            let mut inst = gen_instance(&graph, seed);
            inst.id = format!("inst{k:0width$}");
            (inst, None)
        })
        .collect())
}

/// Indices of up to `count` instances picked by the master seed.
fn brute_force_sample(n: usize, count: usize, master_seed: u64) -> BTreeSet<usize> {
    let mut keyed: Vec<(u64, usize)> = (0..n)
        .map(|i| (rng::word(master_seed, Purpose::Sample, i as u64), i))
        .collect();
    keyed.sort_unstable();
    keyed.into_iter().take(count).map(|(_, i)| i).collect()
}

/// Run the whole pipeline on a pool of `workers` threads and write every output.
pub fn run_experiment(config: &ExperimentConfig, workers: usize) -> Result<ExperimentManifest> {
    config.validate()?;
    if workers == 0 {
        return Err(Error::Config("workers: must be >= 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("workers: {e}")))?;
    pool.install(|| run_in_pool(config))
}

fn run_in_pool(config: &ExperimentConfig) -> Result<ExperimentManifest> {
    let out = &config.output_dir;
    let inst_dir = out.join("instances");
    std::fs::create_dir_all(&inst_dir).map_err(|e| Error::io(&inst_dir, e))?;
    let spec = config.chimera.to_spec()?;
    let mut loaded = load_instances(config, &spec)?;
    loaded.sort_by(|a, b| a.0.id.cmp(&b.0.id));

    let cache = config.cache_dir();
    let grounds = loaded
        .par_iter()
        .map(|(inst, _)| cached_ground(inst, &spec, &cache))
        .collect::<Result<Vec<_>>>()?;

    let sample = brute_force_sample(loaded.len(), config.brute_force_checks, config.master_seed);
    let mut entries = Vec::with_capacity(loaded.len());
    for (k, ((inst, source), ground)) in loaded.iter().zip(grounds).enumerate() {
        let checked = sample.contains(&k) && inst.graph().n_active() <= BRUTE_FORCE_LIMIT;
        if checked {
            let brute = brute_force_ground(inst)?;
            if brute.energy != ground.energy {
                return Err(Error::OracleFailure {
                    id: inst.id.clone(),
                    dp: ground.energy,
                    brute: brute.energy,
                });
            }
        }
        let path = match source {
            Some(p) => p.clone(),
            None => {
                let p = inst_dir.join(format!("{}.txt", inst.id));
                write_instance(inst, &p)?;
                p
            }
        };
        entries.push(InstanceEntry {
            id: inst.id.clone(),
            path: relative_to(&path, out),
            content_hash: content_hash(inst),
            ground,
            brute_force_checked: checked,
        });
    }

    let mut solvers = config.solvers.clone();
    solvers.sort();
    let mut records = Vec::new();
    for kind in solvers {
        let solver = make_solver(config, kind);
        records.extend(run_solver(solver.as_ref(), &loaded, &entries, config)?);
    }

    let mut manifest = ExperimentManifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        instances: entries,
        records,
        histograms: Vec::new(),
        correlations: Vec::new(),
    };
    write_outputs(&mut manifest, out)?;
    Ok(manifest)
}

/// Success records of one solver; the parallel grain is one (instance, repetition) run.
fn run_solver(
    solver: &dyn Solver,
    loaded: &[(Instance, Option<PathBuf>)],
    entries: &[InstanceEntry],
    config: &ExperimentConfig,
) -> Result<Vec<SuccessRecord>> {
    let reps = config.repetitions;
    let hits = (0..loaded.len() as u64 * reps)
        .into_par_iter()
        .map(|task| {
            let (k, rep) = ((task / reps) as usize, task % reps);
            let inst = &loaded[k].0;
            let seed = rng::run_seed(config.master_seed, &inst.id, rep);
            let config = solver.solve(inst, seed)?;
            Ok(energy(inst, &config)? == entries[k].ground.energy)
        })
        .collect::<Result<Vec<bool>>>()?;
    hits.chunks(reps as usize)
        .zip(entries)
        .map(|(chunk, e)| {
            let successes = chunk.iter().filter(|&&h| h).count() as u64;
            SuccessRecord::new(e.id.clone(), solver.kind(), reps, successes)
        })
        .collect()
}

/// Rewrite every file derived from `manifest.records`: the records CSV, one
/// histogram per solver, one scatter CSV per solver pair, the correlation
/// summary and the manifest itself.
pub fn write_outputs(manifest: &mut ExperimentManifest, out: &Path) -> Result<()> {
    manifest.check_integrity()?;
    manifest
        .records
        .sort_by(|a, b| (a.solver, &a.instance_id).cmp(&(b.solver, &b.instance_id)));
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    write_file(&out.join(RECORDS_FILE), &records_to_csv(&manifest.records)?)?;

    let by_solver: BTreeMap<SolverKind, Vec<SuccessRecord>> =
        manifest.records.iter().fold(BTreeMap::new(), |mut m, r| {
            m.entry(r.solver).or_insert_with(Vec::new).push(r.clone());
            m
        });

    manifest.histograms.clear();
    for (&kind, recs) in &by_solver {
        let hist = histogram(recs, manifest.config.bins)?;
        let name = format!("histogram_{kind}.csv");
        write_file(&out.join(&name), &histogram_to_csv(&hist)?)?;
        manifest.histograms.push(HistogramEntry {
            solver: kind,
            path: PathBuf::from(name),
            bimodality: manifest.config.bimodality.evaluate(&hist).unwrap_or(BimodalityReport {
                bimodal: false,
                low_mass: 0,
                mid_mass: 0,
                high_mass: 0,
            }),
            counts: hist.counts,
        });
    }

    manifest.correlations.clear();
    let kinds: Vec<SolverKind> = by_solver.keys().copied().collect();
    for (a, &x) in kinds.iter().enumerate() {
        for &y in &kinds[a + 1..] {
            let result = correlate(&by_solver[&x], &by_solver[&y])?;
            let name = format!("scatter_{x}_{y}.csv");
            write_file(&out.join(&name), &scatter_to_csv(&result)?)?;
            manifest.correlations.push(CorrelationEntry {
                x,
                y,
                pearson_r: result.pearson_r,
                spearman_rho: result.spearman_rho,
                degenerate: result.degenerate,
                n: result.n,
                scatter_path: PathBuf::from(name),
            });
        }
    }
    write_file(
        &out.join(CORRELATIONS_FILE),
        &(serde_json::to_string_pretty(&manifest.correlations)? + "\n"),
    )?;
    write_file(
        &out.join(MANIFEST_FILE),
        &(serde_json::to_string_pretty(manifest)? + "\n"),
    )
}

/// Merge externally measured success probabilities (solver `External`) into the
/// experiment in `out_dir` and refresh its derived outputs.
pub fn import_external_probabilities(out_dir: &Path, csv_path: &Path) -> Result<ExperimentManifest> {
    let mut manifest = ExperimentManifest::read(&out_dir.join(MANIFEST_FILE))?;
    let text = std::fs::read_to_string(csv_path).map_err(|e| Error::io(csv_path, e))?;
    let origin = csv_path.display().to_string();
    let external = records_from_csv(&text, &origin)?;
    if external.len() < 3 {
        return Err(Error::Stats(format!(
            "{origin}: correlation needs at least 3 records, got {}",
            external.len()
        )));
    }
    let known: BTreeSet<&str> = manifest.instances.iter().map(|e| e.id.as_str()).collect();
    let mut seen = BTreeSet::new();
    for (k, r) in external.iter().enumerate() {
        if r.solver != SolverKind::External {
            return Err(Error::Parse {
                path: origin.clone(),
                line: k + 2,
                reason: format!("expected solver External, got {}", r.solver),
            });
        }
        if !known.contains(r.instance_id.as_str()) {
            return Err(Error::UnknownInstance(r.instance_id.clone()));
        }
        if !seen.insert(r.instance_id.clone()) {
            return Err(Error::Parse {
                path: origin.clone(),
                line: k + 2,
                reason: format!("duplicate instance id `{}`", r.instance_id),
            });
        }
    }
    manifest.records.retain(|r| r.solver != SolverKind::External);
    manifest.records.extend(external);
    write_outputs(&mut manifest, out_dir)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
instances = 4
master_seed = 7
repetitions = 5
output_dir = "out"
solvers = ["O3", "SA"]

[chimera]
rows = 1
cols = 1

[o3]
t_f = 5.0

[sa]
sweeps = 20
"#;

    #[test]
    fn parses_and_resolves_paths() {
        let c = ExperimentConfig::from_toml_str(SMALL, Path::new("/tmp/x")).unwrap();
        assert_eq!(c.output_dir, PathBuf::from("/tmp/x/out"));
        assert_eq!(c.chimera.shore, 4);
        assert_eq!(c.o3.t_f, 5.0);
        assert_eq!(c.o3.dt, AnnealParamsO3::default().dt);
        assert_eq!(c.bins, 20);
    }

    #[test]
    fn unknown_keys_name_their_path() {
        let bad = SMALL.replace("t_f = 5.0", "t_f = 5.0\nkapa = 0.1");
        let err = ExperimentConfig::from_toml_str(&bad, Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("o3.kapa"), "{err}");
        let bad = SMALL.replace("instances = 4", "instance = 4");
        let err = ExperimentConfig::from_toml_str(&bad, Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("instance: unknown key"), "{err}");
    }

    #[test]
    fn invalid_values_name_their_path() {
        let bad = SMALL.replace("t_f = 5.0", "t_f = 5.0\nkappa = 0.9");
        let err = ExperimentConfig::from_toml_str(&bad, Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("o3.kappa"), "{err}");
        let bad = SMALL.replace("sweeps = 20", "sweeps = 0");
        let err = ExperimentConfig::from_toml_str(&bad, Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("sa.sweeps"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn content_hash_ignores_labels() {
        let g = build_chimera(&ChimeraSpec::new(1, 1, 4)).unwrap();
        let a = gen_instance(&g, 3);
        let mut b = a.clone();
        b.id = "other".into();
        b.seed = 99;
        assert_eq!(content_hash(&a), content_hash(&b));
        assert_ne!(content_hash(&a), content_hash(&gen_instance(&g, 4)));
        assert_eq!(content_hash(&a).len(), 64);
    }

    #[test]
    fn brute_force_sample_is_bounded() {
        assert_eq!(brute_force_sample(10, 3, 1).len(), 3);
        assert_eq!(brute_force_sample(2, 3, 1).len(), 2);
        assert_eq!(brute_force_sample(10, 3, 1), brute_force_sample(10, 3, 1));
    }
}
