//! End-to-end experiment: generate, solve exactly, anneal with every model,
//! then write records, histograms and correlations to a directory.
use spinanneal::chimera::ChimeraSpec;
use spinanneal::{run_experiment, AnnealParamsO3, ExperimentConfig, SolverKind};

fn main() -> spinanneal::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("spinanneal_demo").display().to_string());
    let mut config = ExperimentConfig::new(
        &ChimeraSpec::new(2, 2, 4),
        24,
        20,
        vec![SolverKind::O3, SolverKind::O2, SolverKind::SA],
        &out,
    );
    config.master_seed = 1;
    config.o3 = AnnealParamsO3 {
        t_f: 100.0,
        ..Default::default()
    };
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let manifest = run_experiment(&config, workers)?;

    for h in &manifest.histograms {
        println!("{}: {:?}", h.solver, h.counts);
    }
    for c in &manifest.correlations {
        println!("{} vs {}: spearman {:.3} over {} instances", c.x, c.y, c.spearman_rho, c.n);
    }
    println!("outputs in {out}");
    println!("\nconfig as TOML:\n{}", config.to_toml_string());
    Ok(())
}
