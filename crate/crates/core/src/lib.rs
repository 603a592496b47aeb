//! Semi-classical spin annealers for ±1 Ising spin glasses on chimera graphs.
//!
//! The crate bundles three stochastic solvers (O(3) precession dynamics, an
//! O(2) planar-rotor model and Metropolis simulated annealing), exact ground
//! state solvers used as the success criterion, and the statistics needed to
//! compare solvers instance by instance.

pub mod chimera;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod instance;
pub mod o2;
pub mod o3;
pub mod rng;
pub mod sa;
pub mod solver;
pub mod stats;

pub use chimera::{build_chimera, ChimeraSpec, Graph};
pub use error::{Error, Result};
pub use exact::{brute_force_ground, chimera_dp_ground, GroundTruth, Method};
pub use experiment::{import_external_probabilities, run_experiment, ExperimentConfig, ExperimentManifest};
pub use instance::{energy, gen_instance, Gauge, Instance, SpinConfig};
pub use o2::{run_o2, AnnealParamsO2};
pub use o3::{run_o3, AnnealParamsO3, SpinStateO3};
pub use sa::{run_sa, SaSchedule};
pub use solver::{O2Annealer, O3Annealer, SaAnnealer, Solver, SolverKind};
pub use stats::{success_probability, Histogram, SuccessRecord};
