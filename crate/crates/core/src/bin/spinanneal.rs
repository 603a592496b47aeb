use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spinanneal::chimera::{build_chimera, read_mask, ChimeraSpec};
use spinanneal::exact::{brute_force_ground, chimera_dp_ground, GroundTruth};
use spinanneal::experiment::{import_external_probabilities, run_experiment, ExperimentConfig};
use spinanneal::instance::{energy, gen_instance, read_instance, write_instance, Instance};
use spinanneal::rng::{self, Purpose};
use spinanneal::stats::{self, correlate, histogram, histogram_to_csv, scatter_to_csv, SuccessRecord};
use spinanneal::{
    AnnealParamsO2, AnnealParamsO3, Error, O2Annealer, O3Annealer, Result, SaAnnealer,
    SaSchedule, Solver, SolverKind,
};

/// Semi-classical annealers and exact solvers for chimera Ising spin glasses.
#[derive(Parser)]
#[command(name = "spinanneal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random ±1 instances on a chimera graph
    Gen(GenArgs),
    /// Exact ground state of an instance file, printed as JSON
    SolveExact(SolveArgs),
    /// Repeated annealing runs on one instance
    Anneal(AnnealArgs),
    /// Histograms, bimodality and correlations from a success-record CSV
    Stats(StatsArgs),
    /// Run a full experiment from a TOML config
    Experiment(ExperimentArgs),
    /// Merge external success probabilities into an experiment
    Import(ImportArgs),
}

#[derive(Args)]
struct TopologyArgs {
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long, default_value_t = 4)]
    shore: usize,
}

impl TopologyArgs {
    /// Chimera spec for `instance`, masking its inactive vertices; `None` without rows/cols.
    fn spec_for(&self, instance: &Instance) -> Option<ChimeraSpec> {
        let (rows, cols) = (self.rows?, self.cols?);
        let g = instance.graph();
        Some(
            ChimeraSpec::new(rows, cols, self.shore)
                .with_mask((0..g.n_vertices()).filter(|&v| !g.is_active(v))),
        )
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long, default_value_t = 4)]
    shore: usize,
    /// file listing disabled vertex indices
    #[arg(long)]
    mask: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// number of instances; more than one writes `<out>/inst<k>.txt`
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, ValueEnum)]
enum ExactMethod {
    Auto,
    Dp,
    Brute,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[command(flatten)]
    topology: TopologyArgs,
    /// `auto` uses the DP when rows/cols are given, brute force otherwise
    #[arg(long, value_enum, default_value_t = ExactMethod::Auto)]
    method: ExactMethod,
}

#[derive(Copy, Clone, ValueEnum)]
enum Model {
    O3,
    O2,
    Sa,
}

#[derive(Args)]
struct AnnealArgs {
    instance: PathBuf,
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, default_value_t = 10)]
    repetitions: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    t_f: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    beta_start: Option<f64>,
    #[arg(long)]
    beta_end: Option<f64>,
    #[arg(long)]
    sweeps: Option<usize>,
    /// ground truth JSON (as printed by `solve-exact`) used to count successes
    #[arg(long)]
    ground: Option<PathBuf>,
    #[command(flatten)]
    topology: TopologyArgs,
}

#[derive(Args)]
struct StatsArgs {
    records: PathBuf,
    #[arg(long, default_value_t = 20)]
    bins: usize,
    /// directory for histogram and scatter CSVs
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    config: PathBuf,
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Args)]
struct ImportArgs {
    /// output directory of a finished experiment
    #[arg(long)]
    experiment: PathBuf,
    csv: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::SolveExact(a) => solve_exact(a),
        Command::Anneal(a) => anneal(a),
        Command::Stats(a) => stats_cmd(a),
        Command::Experiment(a) => experiment(a),
        Command::Import(a) => import(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn gen(a: GenArgs) -> Result<()> {
    let mut spec = ChimeraSpec::new(a.rows, a.cols, a.shore);
    if let Some(m) = &a.mask {
        spec.mask = read_mask(m)?;
    }
    let graph = build_chimera(&spec)?;
    let io = |p: &Path, e| Error::Io {
        path: p.to_path_buf(),
        source: e,
    };
    if a.count == 1 {
        if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        }
        return write_instance(&gen_instance(&graph, a.seed), &a.out);
    }
    std::fs::create_dir_all(&a.out).map_err(|e| io(&a.out, e))?;
    let width = (a.count.max(1) - 1).to_string().len().max(4);
    for k in 0..a.count {
        let mut inst = gen_instance(&graph, rng::derive_seed(a.seed, Purpose::InstanceSeed, k as u64));
        inst.id = format!("inst{k:0width$}");
        write_instance(&inst, &a.out.join(format!("{}.txt", inst.id)))?;
    }
    Ok(())
}

fn exact_ground(instance: &Instance, topology: &TopologyArgs, method: ExactMethod) -> Result<GroundTruth> {
    let spec = topology.spec_for(instance);
    match (method, spec) {
        (ExactMethod::Brute, _) | (ExactMethod::Auto, None) => brute_force_ground(instance),
        (_, Some(spec)) => chimera_dp_ground(instance, &spec),
        (ExactMethod::Dp, None) => Err(Error::Config("--method dp needs --rows and --cols".into())),
    }
}

fn solve_exact(a: SolveArgs) -> Result<()> {
    let instance = read_instance(&a.instance)?;
    print_json(&exact_ground(&instance, &a.topology, a.method)?)
}

fn anneal(a: AnnealArgs) -> Result<()> {
    let instance = read_instance(&a.instance)?;
    let solver: Box<dyn Solver> = match a.model {
        Model::O3 => {
            let d = AnnealParamsO3::default();
            let p = AnnealParamsO3 {
                h: a.h.unwrap_or(d.h),
                t_f: a.t_f.unwrap_or(d.t_f),
                dt: a.dt.unwrap_or(d.dt),
                alpha: a.alpha.unwrap_or(d.alpha),
                kappa: a.kappa.unwrap_or(d.kappa),
            };
            p.validate()?;
            Box::new(O3Annealer::new(p))
        }
        Model::O2 => {
            let d = AnnealParamsO2::default();
            let p = AnnealParamsO2 {
                h: a.h.unwrap_or(d.h),
                t_f: a.t_f.unwrap_or(d.t_f),
                dt: a.dt.unwrap_or(d.dt),
                gamma: a.gamma.unwrap_or(d.gamma),
                kappa: a.kappa.unwrap_or(d.kappa),
            };
            p.validate()?;
            Box::new(O2Annealer::new(p))
        }
        Model::Sa => {
            let d = SaSchedule::default();
            let s = SaSchedule {
                beta_start: a.beta_start.unwrap_or(d.beta_start),
                beta_end: a.beta_end.unwrap_or(d.beta_end),
                sweeps: a.sweeps.unwrap_or(d.sweeps),
            };
            s.validate()?;
            Box::new(SaAnnealer::new(s))
        }
    };
    let ground = match (&a.ground, a.topology.rows.is_some()) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            })?;
            Some(serde_json::from_str::<GroundTruth>(&text)?)
        }
        (None, true) => Some(exact_ground(&instance, &a.topology, ExactMethod::Dp)?),
        (None, false) => None,
    };
    let mut runs = Vec::new();
    let mut energies = Vec::new();
    for rep in 0..a.repetitions {
        let seed = rng::run_seed(a.seed, &instance.id, rep);
        let config = solver.solve(&instance, seed)?;
        let e = energy(&instance, &config)?;
        energies.push(e);
        runs.push(json!({ "rep": rep, "energy": e, "config": config }));
    }
    let record = match &ground {
        Some(g) => {
            stats::check_ground(&instance, g)?;
            let hits = energies.iter().filter(|&&e| e == g.energy).count() as u64;
            Some(SuccessRecord::new(instance.id.clone(), solver.kind(), a.repetitions, hits)?)
        }
        None => None,
    };
    print_json(&json!({
        "instance_id": instance.id,
        "model": solver.kind(),
        "ground_energy": ground.map(|g| g.energy),
        "record": record,
        "runs": runs,
    }))
}

fn stats_cmd(a: StatsArgs) -> Result<()> {
    let records = stats::read_records(&a.records)?;
    if records.is_empty() {
        return Err(Error::Stats(format!("{}: no records", a.records.display())));
    }
    let mut by_solver: BTreeMap<SolverKind, Vec<SuccessRecord>> = BTreeMap::new();
    for r in records {
        by_solver.entry(r.solver).or_default().push(r);
    }
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.clone(),
            source: e,
        })?;
    }
    let write = |name: String, text: String| -> Result<()> {
        if let Some(dir) = &a.out {
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(|e| Error::Io { path, source: e })?;
        }
        Ok(())
    };
    let mut solvers = Vec::new();
    for (kind, recs) in &by_solver {
        let hist = histogram(recs, a.bins)?;
        let bimodality = if a.bins == 20 { Some(stats::bimodality_flag(&hist)?) } else { None };
        write(format!("histogram_{kind}.csv"), histogram_to_csv(&hist)?)?;
        solvers.push(json!({
            "solver": kind,
            "instances": recs.len(),
            "mean_p_hat": recs.iter().map(|r| r.p_hat).sum::<f64>() / recs.len() as f64,
            "histogram": hist.counts,
            "bimodality": bimodality,
        }));
    }
    let kinds: Vec<SolverKind> = by_solver.keys().copied().collect();
    let mut pairs = Vec::new();
    for (i, &x) in kinds.iter().enumerate() {
        for &y in &kinds[i + 1..] {
            let c = correlate(&by_solver[&x], &by_solver[&y])?;
            write(format!("scatter_{x}_{y}.csv"), scatter_to_csv(&c)?)?;
            pairs.push(json!({
                "x": x,
                "y": y,
                "pearson_r": c.pearson_r,
                "spearman_rho": c.spearman_rho,
                "degenerate": c.degenerate,
                "n": c.n,
            }));
        }
    }
    print_json(&json!({ "solvers": solvers, "correlations": pairs }))
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let config = ExperimentConfig::from_file(&a.config)?;
    let manifest = run_experiment(&config, a.workers)?;
    eprintln!(
        "{} instances, {} records written to {}",
        manifest.instances.len(),
        manifest.records.len(),
        config.output_dir.display()
    );
    print_json(&json!({
        "histograms": manifest.histograms,
        "correlations": manifest.correlations,
    }))
}

fn import(a: ImportArgs) -> Result<()> {
    let manifest = import_external_probabilities(&a.experiment, &a.csv)?;
    print_json(&json!({ "correlations": manifest.correlations }))
}
